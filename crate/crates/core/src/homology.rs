//! Integral homology and cohomology, contractibility certificates, derived
//! limits of abelian-group diagrams, and Quillen cohomology with
//! abelian-group coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cat::{find_initial, find_terminal, FinCategory, Obj};
use crate::linalg::{invariant_factors, smith_normal_form, IntMatrix, LinalgError};
use crate::simplicial::{nerve, normalized_chains, ChainComplex, SimplicialSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("diagram is incoherent at simplex {simplex} of level {level}: {reason}")]
    IncoherentDiagram { level: usize, simplex: usize, reason: String },
    #[error("dimension bound {available} is too small; degree range needs {required}")]
    InsufficientBound { required: usize, available: usize },
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

/// A finitely generated abelian group `ℤ^rank ⊕ ⊕ ℤ/dᵢ` in invariant-factor
/// form: every `dᵢ ≥ 2` and `d₁ | d₂ | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbGroup {
    pub fn zero() -> AbGroup {
        AbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> AbGroup {
        AbGroup { rank, torsion: Vec::new() }
    }

    /// `ℤ/n`; `n = 0` gives `ℤ` and `n = 1` the zero group.
    pub fn cyclic(n: u64) -> AbGroup {
        match n {
            0 => AbGroup::free(1),
            1 => AbGroup::zero(),
            _ => AbGroup { rank: 0, torsion: vec![BigInt::from(n)] },
        }
    }

    /// The cokernel of an integer matrix, `ℤ^rows / column span`.
    pub fn cokernel(m: &IntMatrix) -> Result<AbGroup, LinalgError> {
        let factors = invariant_factors(m)?;
        Ok(AbGroup { rank: m.rows() - factors.len(), torsion: factors.into_iter().filter(|d| !d.is_one()).collect() })
    }

    /// Direct sum, renormalized to invariant factors.
    pub fn sum(&self, other: &AbGroup) -> AbGroup {
        let all: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        let mut m = IntMatrix::zeros(all.len(), all.len());
        for (i, d) in all.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        let t = AbGroup::cokernel(&m).expect("diagonal matrices reduce without blow-up");
        AbGroup { rank: self.rank + other.rank, torsion: t.torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// True for the group `ℤ`.
    pub fn is_integers(&self) -> bool {
        self.rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Homology `H_k` of a chain complex for `0 ≤ k ≤ dim − 1`; the top degree
/// is not reported since it would need the next boundary map.
pub fn homology(k: &ChainComplex) -> Result<Vec<AbGroup>, HomologyError> {
    let top = k.dim();
    let factors: Vec<Vec<BigInt>> = k.boundaries.iter().map(invariant_factors).collect::<Result<_, _>>()?;
    Ok((0..top)
        .map(|d| AbGroup {
            rank: k.ranks[d] - factors[d].len() - factors[d + 1].len(),
            torsion: factors[d + 1].iter().filter(|x| !x.is_one()).cloned().collect(),
        })
        .collect())
}

/// Cohomology `H^k(−; ℤ)` of a chain complex for `0 ≤ k ≤ dim − 1`.
pub fn cohomology(k: &ChainComplex) -> Result<Vec<AbGroup>, HomologyError> {
    let top = k.dim();
    let factors: Vec<Vec<BigInt>> = k.boundaries.iter().map(invariant_factors).collect::<Result<_, _>>()?;
    Ok((0..top)
        .map(|d| AbGroup {
            rank: k.ranks[d] - factors[d].len() - factors[d + 1].len(),
            torsion: factors[d].iter().filter(|x| !x.is_one()).cloned().collect(),
        })
        .collect())
}

/// Integral cohomology from integral homology by universal coefficients:
/// `H^k = free(H_k) ⊕ tors(H_{k−1})`.
pub fn universal_coefficients(h: &[AbGroup]) -> Vec<AbGroup> {
    (0..h.len())
        .map(|k| AbGroup { rank: h[k].rank, torsion: if k == 0 { Vec::new() } else { h[k - 1].torsion.clone() } })
        .collect()
}

/// Nerve homology of a category in degrees `0..dim`.
pub fn nerve_homology(c: &FinCategory, dim: usize) -> Result<Vec<AbGroup>, HomologyError> {
    homology(&normalized_chains(&nerve(c, dim)))
}

/// Why the nerve of a category is (or appears) weakly contractible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractibilityCertificate {
    InitialObject(Obj),
    TerminalObject(Obj),
    /// `H₀ = ℤ` and `H_k = 0` for `1 ≤ k ≤ dim − 1`; evidence only.
    BoundedHomologyEvidence {
        dim: usize,
    },
}

impl ContractibilityCertificate {
    /// `PROOF` for initial and terminal objects, `EVIDENCE` otherwise.
    pub fn label(&self) -> &'static str {
        match self {
            ContractibilityCertificate::BoundedHomologyEvidence { .. } => "EVIDENCE",
            _ => "PROOF",
        }
    }

    pub fn is_proof(&self) -> bool {
        self.label() == "PROOF"
    }
}

/// Outcome of a contractibility test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Contractibility {
    Certified(ContractibilityCertificate),
    /// The first degree whose nerve homology differs from that of a point.
    Refuted {
        degree: usize,
        group: AbGroup,
    },
}

/// Looks for an initial object, then a terminal object, then falls back to
/// nerve homology through degree `dim − 1`.
pub fn contractibility(c: &FinCategory, dim: usize) -> Result<Contractibility, HomologyError> {
    if let Some(x) = find_initial(c) {
        return Ok(Contractibility::Certified(ContractibilityCertificate::InitialObject(x)));
    }
    if let Some(x) = find_terminal(c) {
        return Ok(Contractibility::Certified(ContractibilityCertificate::TerminalObject(x)));
    }
    let h = nerve_homology(c, dim.max(1))?;
    for (degree, group) in h.into_iter().enumerate() {
        let expected = if degree == 0 { group.is_integers() } else { group.is_zero() };
        if !expected {
            return Ok(Contractibility::Refuted { degree, group });
        }
    }
    Ok(Contractibility::Certified(ContractibilityCertificate::BoundedHomologyEvidence { dim: dim.max(1) }))
}

/// A finitely presented abelian group `ℤ^generators / column span(relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbPresentation {
    pub generators: usize,
    pub relations: IntMatrix,
}

impl AbPresentation {
    pub fn free(n: usize) -> AbPresentation {
        AbPresentation { generators: n, relations: IntMatrix::zeros(n, 0) }
    }

    /// `ℤ/n` on one generator.
    pub fn cyclic(n: i64) -> AbPresentation {
        AbPresentation { generators: 1, relations: IntMatrix::from_rows(&[vec![n]], 1) }
    }

    pub fn group(&self) -> Result<AbGroup, LinalgError> {
        AbGroup::cokernel(&self.relations)
    }
}

/// A diagram of abelian groups over a simplicial set: a presented group per
/// vertex and an integer matrix per edge (degenerate edges included), acting
/// on generators.
#[derive(Debug, Clone)]
pub struct AbDiagram<'a> {
    pub base: &'a SimplicialSet,
    pub groups: Vec<AbPresentation>,
    pub maps: Vec<IntMatrix>,
}

impl<'a> AbDiagram<'a> {
    /// The constant diagram at a presented group, all edges acting by the
    /// identity.
    pub fn constant(base: &'a SimplicialSet, group: AbPresentation) -> AbDiagram<'a> {
        let n = group.generators;
        AbDiagram { base, groups: vec![group; base.count(0)], maps: vec![IntMatrix::identity(n); base.count(1)] }
    }

    /// Checks that edge maps respect relations, that degenerate edges act as
    /// the identity, and that every 2-simplex commutes modulo relations.
    pub fn validate(&self) -> Result<(), HomologyError> {
        let x = self.base;
        if x.dim() < 1 {
            return Err(HomologyError::Malformed("the base needs edges".into()));
        }
        if self.groups.len() != x.count(0) || self.maps.len() != x.count(1) {
            return Err(HomologyError::Malformed("one group per vertex and one map per edge are required".into()));
        }
        let lattices: Vec<Lattice> =
            self.groups.iter().map(|g| Lattice::new(&g.relations)).collect::<Result<_, _>>()?;
        let incoherent = |level, simplex, reason: &str| {
            Err(HomologyError::IncoherentDiagram { level, simplex, reason: reason.to_string() })
        };
        for (k, g) in self.groups.iter().enumerate() {
            if g.relations.rows() != g.generators {
                return incoherent(0, k, "relation matrix has the wrong height");
            }
        }
        for e in 0..x.count(1) {
            let (s, t) = (x.face(1, e, 1), x.face(1, e, 0));
            let m = &self.maps[e];
            if m.rows() != self.groups[t].generators || m.cols() != self.groups[s].generators {
                return incoherent(1, e, "edge map has the wrong shape");
            }
            if !lattices[t].contains_columns(&m.mul(&self.groups[s].relations)?)? {
                return incoherent(1, e, "edge map does not preserve relations");
            }
            if x.is_degenerate(1, e) {
                let diff = sub(m, &IntMatrix::identity(m.rows()));
                if !lattices[t].contains_columns(&diff)? {
                    return incoherent(1, e, "degenerate edge does not act as the identity");
                }
            }
        }
        if x.dim() >= 2 {
            for s in 0..x.count(2) {
                let (d0, d1, d2) = (x.face(2, s, 0), x.face(2, s, 1), x.face(2, s, 2));
                let composite = self.maps[d0].mul(&self.maps[d2])?;
                let target = x.face(1, d1, 0);
                if !lattices[target].contains_columns(&sub(&self.maps[d1], &composite))? {
                    return incoherent(2, s, "the long edge differs from the composite");
                }
            }
        }
        Ok(())
    }
}

fn sub(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = a.clone();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            out.set(i, j, a.get(i, j) - b.get(i, j));
        }
    }
    out
}

/// A sublattice of `ℤ^n` given by spanning columns, with membership tests.
struct Lattice {
    u: IntMatrix,
    diagonal: Vec<BigInt>,
}

impl Lattice {
    fn new(span: &IntMatrix) -> Result<Lattice, LinalgError> {
        let (s, u, _) = smith_normal_form(span)?;
        let diagonal = (0..s.rows()).map(|i| if i < s.cols() { s.get(i, i).clone() } else { BigInt::zero() }).collect();
        Ok(Lattice { u, diagonal })
    }

    fn contains_columns(&self, m: &IntMatrix) -> Result<bool, LinalgError> {
        let um = self.u.mul(m)?;
        Ok((0..um.rows()).all(|i| {
            let d = &self.diagonal[i];
            (0..um.cols()).all(|j| {
                let v = um.get(i, j);
                if d.is_zero() {
                    v.is_zero()
                } else {
                    (v % d).is_zero()
                }
            })
        }))
    }
}

/// A basis of the kernel lattice `{v : M v = 0}` as columns.
fn kernel_basis(m: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let (s, _, v) = smith_normal_form(m)?;
    let rank = (0..s.rows().min(s.cols())).filter(|&i| !s.get(i, i).is_zero()).count();
    let cols: Vec<usize> = (rank..m.cols()).collect();
    let mut out = IntMatrix::zeros(m.cols(), cols.len());
    for (c, &j) in cols.iter().enumerate() {
        for i in 0..m.cols() {
            out.set(i, c, v.get(i, j).clone());
        }
    }
    Ok(out)
}

/// Solves `B X = Y` for `B` of full column rank, assuming a solution exists.
fn solve_in_basis(b: &IntMatrix, y: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let (s, u, v) = smith_normal_form(b)?;
    let uy = u.mul(y)?;
    let p = b.cols();
    let mut z = IntMatrix::zeros(p, y.cols());
    for i in 0..p {
        let d = s.get(i, i);
        for j in 0..y.cols() {
            let (q, r) = (uy.get(i, j) / d, uy.get(i, j) % d);
            debug_assert!(r.is_zero(), "vector outside the lattice");
            z.set(i, j, q);
        }
    }
    v.mul(&z)
}

/// Cohomology of a cochain complex of finitely presented groups
/// `C^0 → C^1 → ...`, in degrees where both adjacent coboundaries are known.
///
/// `groups[k]` presents `C^k`; `coboundaries[k]: C^k → C^{k+1}` acts on
/// generators and must carry relations into relations.
pub fn presented_cohomology(
    groups: &[AbPresentation],
    coboundaries: &[IntMatrix],
) -> Result<Vec<AbGroup>, HomologyError> {
    let mut out = Vec::with_capacity(coboundaries.len());
    for k in 0..coboundaries.len() {
        let next = &groups[k + 1];
        let gk = groups[k].generators;
        let full = coboundaries[k].hconcat(&next.relations);
        let kernel = kernel_basis(&full)?.row_block(0, gk);
        // the projected kernel spans the cycles; extract a basis
        let cycles = column_basis(&kernel)?;
        let incoming = match k {
            0 => IntMatrix::zeros(gk, 0),
            _ => coboundaries[k - 1].clone(),
        };
        let boundaries = incoming.hconcat(&groups[k].relations);
        let coords = solve_in_basis(&cycles, &boundaries)?;
        out.push(AbGroup::cokernel(&coords)?);
    }
    Ok(out)
}

/// A basis (as columns) of the lattice spanned by the columns of `m`.
fn column_basis(m: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    // column-style Hermite reduction via the Smith transform: M V = U⁻¹ S, so
    // the first `rank` columns of M V form a basis of the column lattice.
    let (s, _, v) = smith_normal_form(m)?;
    let rank = (0..s.rows().min(s.cols())).filter(|&i| !s.get(i, i).is_zero()).count();
    let mv = m.mul(&v)?;
    let mut out = IntMatrix::zeros(m.rows(), rank);
    for i in 0..m.rows() {
        for j in 0..rank {
            out.set(i, j, mv.get(i, j).clone());
        }
    }
    Ok(out)
}

/// Derived limits `R^k lim A` for `0 ≤ k ≤ dim − 1`, computed from the
/// normalized cosimplicial replacement.
///
/// `C^k` is the product over nondegenerate k-simplices `τ` of `A(last vertex
/// of τ)`; for a (k+1)-simplex `τ`,
/// `(δc)(τ) = Σ_{i≤k} (−1)^i c(d_i τ) + (−1)^{k+1} A(last edge of τ) c(d_{k+1} τ)`,
/// where terms on degenerate faces vanish.
pub fn derived_limit(a: &AbDiagram<'_>) -> Result<Vec<AbGroup>, HomologyError> {
    a.validate()?;
    let x = a.base;
    let dim = x.dim();
    let nondeg: Vec<Vec<usize>> = (0..=dim).map(|k| x.nondegenerate(k)).collect();
    // offsets of each nondegenerate simplex's block of generators
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(dim + 1);
    let mut position: Vec<Vec<Option<usize>>> = Vec::with_capacity(dim + 1);
    let mut groups = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let mut off = Vec::with_capacity(nondeg[k].len());
        let mut pos = vec![None; x.count(k)];
        let mut total = 0;
        let mut rel_cols = 0;
        for (i, &s) in nondeg[k].iter().enumerate() {
            pos[s] = Some(i);
            off.push(total);
            let g = &a.groups[x.vertex(k, s, k)];
            total += g.generators;
            rel_cols += g.relations.cols();
        }
        let mut relations = IntMatrix::zeros(total, rel_cols);
        let mut col = 0;
        for (i, &s) in nondeg[k].iter().enumerate() {
            let r = &a.groups[x.vertex(k, s, k)].relations;
            for c in 0..r.cols() {
                for row in 0..r.rows() {
                    relations.set(off[i] + row, col, r.get(row, c).clone());
                }
                col += 1;
            }
        }
        offsets.push(off);
        position.push(pos);
        groups.push(AbPresentation { generators: total, relations });
    }
    let mut coboundaries = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut m = IntMatrix::zeros(groups[k + 1].generators, groups[k].generators);
        for (ti, &t) in nondeg[k + 1].iter().enumerate() {
            let row0 = offsets[k + 1][ti];
            for i in 0..=k + 1 {
                let face = x.face(k + 1, t, i);
                let Some(fi) = position[k][face] else { continue };
                let col0 = offsets[k][fi];
                let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
                if i <= k {
                    let n = a.groups[x.vertex(k, face, k)].generators;
                    for j in 0..n {
                        m.add_to(row0 + j, col0 + j, sign);
                    }
                } else {
                    let e = &a.maps[x.last_edge(k + 1, t)];
                    for r in 0..e.rows() {
                        for c in 0..e.cols() {
                            let v = e.get(r, c);
                            if !v.is_zero() {
                                let cur = m.get(row0 + r, col0 + c).clone();
                                m.set(row0 + r, col0 + c, cur + if sign > 0 { v.clone() } else { -v.clone() });
                            }
                        }
                    }
                }
            }
        }
        coboundaries.push(m);
    }
    presented_cohomology(&groups, &coboundaries)
}

/// Quillen cohomology `H^n_Q` with abelian-group coefficients for `n` in
/// `lo..=hi`, read off as `R^{n+2} lim` over a model of the twisted 2-cell
/// category. Degrees with `n + 2 < 0` are zero.
pub fn quillen_cohomology(a: &AbDiagram<'_>, lo: i64, hi: i64) -> Result<Vec<(i64, AbGroup)>, HomologyError> {
    let required = (hi + 3).max(0) as usize;
    if a.base.dim() < required {
        return Err(HomologyError::InsufficientBound { required, available: a.base.dim() });
    }
    let lim = derived_limit(a)?;
    Ok((lo..=hi)
        .map(|n| {
            let k = n + 2;
            (n, if k < 0 { AbGroup::zero() } else { lim[k as usize].clone() })
        })
        .collect())
}

/// Euler characteristic `Σ (−1)^k rank` over a list of groups.
pub fn euler_characteristic(groups: &[AbGroup]) -> i64 {
    groups.iter().enumerate().map(|(k, g)| if k % 2 == 0 { g.rank as i64 } else { -(g.rank as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::one_object;

    fn cyclic_group(n: usize) -> FinCategory {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let table: Vec<usize> = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        one_object(&names, &table, 0)
    }

    #[test]
    fn group_display_and_sum() {
        assert_eq!(AbGroup::zero().to_string(), "0");
        assert_eq!(AbGroup::cyclic(0).to_string(), "Z");
        let g = AbGroup::cyclic(2).sum(&AbGroup::cyclic(3)).sum(&AbGroup::free(2));
        assert_eq!(g.to_string(), "Z^2 + Z/6");
        let g = AbGroup::cyclic(2).sum(&AbGroup::cyclic(4));
        assert_eq!(g.to_string(), "Z/2 + Z/4");
    }

    #[test]
    fn homology_examples() {
        let h = nerve_homology(&FinCategory::terminal(), 3).unwrap();
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::zero(), AbGroup::zero()]);
        let h = nerve_homology(&cyclic_group(2), 4).unwrap();
        assert_eq!(h, vec![AbGroup::free(1), AbGroup::cyclic(2), AbGroup::zero(), AbGroup::cyclic(2)]);
        let c = cohomology(&normalized_chains(&nerve(&cyclic_group(2), 4))).unwrap();
        assert_eq!(c, universal_coefficients(&h));
    }

    #[test]
    fn contractibility_examples() {
        assert!(matches!(
            contractibility(&FinCategory::ordinal(2), 3).unwrap(),
            Contractibility::Certified(ContractibilityCertificate::InitialObject(0))
        ));
        assert_eq!(
            contractibility(&cyclic_group(2), 3).unwrap(),
            Contractibility::Refuted { degree: 1, group: AbGroup::cyclic(2) }
        );
        assert_eq!(
            contractibility(&FinCategory::empty(), 3).unwrap(),
            Contractibility::Refuted { degree: 0, group: AbGroup::zero() }
        );
        // a zigzag 0 → 1 ← 2 → 3 has neither initial nor terminal object
        let names: Vec<String> = (0..4).map(|i| i.to_string()).collect();
        let zigzag = FinCategory::poset(names, |a, b| a == b || (a % 2 == 0 && b == a + 1) || (a == 2 && b == 1));
        let verdict = contractibility(&zigzag, 3).unwrap();
        assert_eq!(verdict, Contractibility::Certified(ContractibilityCertificate::BoundedHomologyEvidence { dim: 3 }));
    }

    #[test]
    fn derived_limit_examples() {
        // ℤ --×2--> ℤ over [1]
        let x = nerve(&FinCategory::ordinal(1), 3);
        let mut d = AbDiagram::constant(&x, AbPresentation::free(1));
        d.maps[x.nondegenerate(1)[0]] = IntMatrix::from_rows(&[vec![2]], 1);
        assert_eq!(derived_limit(&d).unwrap(), vec![AbGroup::free(1), AbGroup::zero(), AbGroup::zero()]);
        // trivial ℤ over Bℤ/2 gives group cohomology
        let x = nerve(&cyclic_group(2), 4);
        let d = AbDiagram::constant(&x, AbPresentation::free(1));
        assert_eq!(
            derived_limit(&d).unwrap(),
            vec![AbGroup::free(1), AbGroup::zero(), AbGroup::cyclic(2), AbGroup::zero()]
        );
        // ℤ/4 with a map that does not respect relations is rejected
        let x = nerve(&FinCategory::ordinal(1), 2);
        let mut d = AbDiagram::constant(&x, AbPresentation::free(1));
        d.groups[0] = AbPresentation::cyclic(4);
        assert!(matches!(derived_limit(&d), Err(HomologyError::IncoherentDiagram { level: 1, .. })));
    }

    #[test]
    fn torsion_coefficients() {
        // constant ℤ/2 over [1]: limit ℤ/2
        let x = nerve(&FinCategory::ordinal(1), 3);
        let d = AbDiagram::constant(&x, AbPresentation::cyclic(2));
        assert_eq!(derived_limit(&d).unwrap(), vec![AbGroup::cyclic(2), AbGroup::zero(), AbGroup::zero()]);
        // constant ℤ/2 over Bℤ/2: ℤ/2 in every degree
        let x = nerve(&cyclic_group(2), 4);
        let d = AbDiagram::constant(&x, AbPresentation::cyclic(2));
        assert_eq!(derived_limit(&d).unwrap(), vec![AbGroup::cyclic(2); 4]);
    }

    #[test]
    fn quillen_shift_and_bound() {
        let x = nerve(&FinCategory::terminal(), 4);
        let d = AbDiagram::constant(&x, AbPresentation::free(1));
        let q = quillen_cohomology(&d, -2, 1).unwrap();
        assert_eq!(q[0], (-2, AbGroup::free(1)));
        assert!(q[1..].iter().all(|(_, g)| g.is_zero()));
        let x = nerve(&FinCategory::terminal(), 3);
        let d = AbDiagram::constant(&x, AbPresentation::free(1));
        assert_eq!(quillen_cohomology(&d, -2, 1), Err(HomologyError::InsufficientBound { required: 4, available: 3 }));
    }
}
