//! Twisted 2-cell 2-categories and the monoid examples: `B²A`, the
//! envelope category `𝓔`, the 2-category `𝒟_A`, the finite mapping
//! categories of `𝒟_ℕ`, and the fibers of the comparison `π`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cat::{is_terminal, one_object, FinCategory, FinFunctor, Mor, Obj};
use crate::groth::{grothendieck, CatValuedTwoFunctor, Grothendieck};
use crate::simplicial::{two_nerve, SimplicialError, SimplicialSet};
use crate::two_cat::{check_biequivalence, hom_twist, op1, product2, FinTwoCategory, TwoCatError, TwoFunctor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Tw2Error {
    #[error("monoid table is malformed: {0}")]
    Malformed(String),
    #[error("monoid operation is not associative on ({0}, {1}, {2})")]
    NotAssociative(String, String, String),
    #[error("`{0}` is not a two-sided unit")]
    NotUnital(String),
    #[error("monoid is not commutative: {0}·{1} ≠ {1}·{0}")]
    NotCommutative(String, String),
    #[error("comparison with B²A is not a biequivalence")]
    NotBiequivalent,
    #[error(transparent)]
    TwoCat(#[from] TwoCatError),
    #[error(transparent)]
    Simplicial(#[from] SimplicialError),
}

/// A finite monoid given by its multiplication table `table[a * n + b] = a·b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monoid {
    elements: Vec<String>,
    table: Vec<usize>,
    unit: usize,
}

impl Monoid {
    /// Validates associativity and unitality exhaustively.
    pub fn new(elements: Vec<String>, table: Vec<usize>, unit: usize) -> Result<Monoid, Tw2Error> {
        let n = elements.len();
        if n == 0 || table.len() != n * n || unit >= n || table.iter().any(|&v| v >= n) {
            return Err(Tw2Error::Malformed("table must be total on the listed elements".into()));
        }
        let m = Monoid { elements, table, unit };
        for a in 0..n {
            if m.op(unit, a) != a || m.op(a, unit) != a {
                return Err(Tw2Error::NotUnital(m.elements[unit].clone()));
            }
            for b in 0..n {
                for c in 0..n {
                    if m.op(m.op(a, b), c) != m.op(a, m.op(b, c)) {
                        let name = |i: usize| m.elements[i].clone();
                        return Err(Tw2Error::NotAssociative(name(a), name(b), name(c)));
                    }
                }
            }
        }
        Ok(m)
    }

    /// `ℤ/n` written additively with elements `0..n`.
    pub fn cyclic(n: usize) -> Monoid {
        let elements = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Monoid { elements, table, unit: 0 }
    }

    pub fn trivial() -> Monoid {
        Monoid::cyclic(1)
    }

    /// The symmetric group on three letters, elements named by one-line
    /// notation.
    pub fn symmetric3() -> Monoid {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).expect("permutation");
        let mut table = Vec::with_capacity(36);
        for p in &perms {
            for q in &perms {
                table.push(index([p[q[0]], p[q[1]], p[q[2]]]));
            }
        }
        let elements = perms.iter().map(|p| format!("{}{}{}", p[0], p[1], p[2])).collect();
        Monoid { elements, table, unit: 0 }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elements.len() + b]
    }

    /// Product of several elements from left to right.
    pub fn prod(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.unit, |acc, &x| self.op(acc, x))
    }

    pub fn check_commutative(&self) -> Result<(), Tw2Error> {
        let n = self.size();
        for a in 0..n {
            for b in a + 1..n {
                if self.op(a, b) != self.op(b, a) {
                    return Err(Tw2Error::NotCommutative(self.elements[a].clone(), self.elements[b].clone()));
                }
            }
        }
        Ok(())
    }

    pub fn is_commutative(&self) -> bool {
        self.check_commutative().is_ok()
    }

    /// The monoid of endomorphisms of a one-object category.
    pub fn from_delooping(c: &FinCategory) -> Option<Monoid> {
        if c.num_objects() != 1 {
            return None;
        }
        let n = c.num_morphisms();
        let table = (0..n * n).map(|k| c.compose(k % n, k / n)).collect();
        Some(Monoid { elements: c.morphism_names().to_vec(), table, unit: c.id(0) })
    }

    /// The one-object category `BA`; morphism `i` is element `i`.
    pub fn delooping(&self) -> FinCategory {
        one_object(&self.elements, &self.table, self.unit)
    }
}

/// All commutative monoids of the given size up to isomorphism, with unit
/// `0` and elements named `0..size`.
pub fn commutative_monoids(size: usize) -> Vec<Monoid> {
    if size == 0 {
        return Vec::new();
    }
    let n = size;
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut table = vec![0; n * n];
    for a in 0..n {
        table[a] = a;
        table[a * n] = a;
    }
    let mut seen: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();
    let perms = permutations_fixing_zero(n);
    let total = n.pow(pairs.len() as u32);
    for code in 0..total {
        let mut c = code;
        for &(a, b) in &pairs {
            table[a * n + b] = c % n;
            table[b * n + a] = c % n;
            c /= n;
        }
        let names = (0..n).map(|i| i.to_string()).collect();
        let Ok(m) = Monoid::new(names, table.clone(), 0) else { continue };
        let canonical = perms
            .iter()
            .map(|p| {
                let mut t = vec![0; n * n];
                for a in 0..n {
                    for b in 0..n {
                        t[p[a] * n + p[b]] = p[table[a * n + b]];
                    }
                }
                t
            })
            .min()
            .expect("at least the identity permutation");
        if !seen.contains(&canonical) {
            seen.push(canonical);
            out.push(m);
        }
    }
    out
}

fn permutations_fixing_zero(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for k in 1..n {
        let mut next = Vec::new();
        for p in &out {
            for pos in 1..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k);
                next.push(q);
            }
        }
        out = next;
    }
    out
}

/// `B²A`: one object, one 1-cell, and the elements of `A` as 2-cells.
pub fn b2(a: &Monoid) -> Result<FinTwoCategory, Tw2Error> {
    a.check_commutative()?;
    Ok(b2_unchecked(a))
}

/// `B²A` without the commutativity check; interchange fails for
/// noncommutative `A`.
pub fn b2_unchecked(a: &Monoid) -> FinTwoCategory {
    FinTwoCategory::from_parts(
        vec!["*".into()],
        vec![Arc::new(a.delooping())],
        vec![0],
        |_, _, _, _, _| 0,
        |_, _, _, al, _| al,
        |_, _, _, _, be| be,
    )
}

/// The hom functor `Map: C_Tw^op × C_Tw → Cat` of the hom-wise twist, over
/// `product2(op1(C_Tw), C_Tw)`.
///
/// The value at `(x, y)` is `Tw(hom(x, y))`. A 1-cell `(φ, ψ)` acts by
/// `σ ↦ φ * σ * ψ` and a 2-cell `(β, γ)` has component
/// `(β₋ * id * γ₋, β₊ * id * γ₊)` at `σ`.
pub fn twisted_hom_functor(c: &FinTwoCategory) -> CatValuedTwoFunctor {
    let ht = hom_twist(c);
    let n = c.num_objects();
    let base = Arc::new(product2(&op1(&ht.category), &ht.category));
    let tw = &ht.twisted;
    let values: Vec<Arc<FinCategory>> = (0..n * n).map(|p| tw[p].category.clone()).collect();
    // σ ↦ φ * σ * ψ for φ: x' → x, σ: x → y, ψ: y → y'
    let sandwich = |x2: Obj, x: Obj, y: Obj, y2: Obj, phi: Mor, s: Mor, psi: Mor| {
        c.hcomp2(x2, x, y2, phi, c.hcomp2(x, y, y2, s, psi))
    };
    let mut on_1cells = Vec::with_capacity(n.pow(4));
    let mut on_2cells = Vec::with_capacity(n.pow(4));
    for p in 0..n * n {
        for q in 0..n * n {
            let ((x, y), (x2, y2)) = ((p / n, p % n), (q / n, q % n));
            let (hl, hr) = (c.hom(x2, x), c.hom(y, y2));
            let (src_tw, dst_tw) = (&tw[p], &tw[q]);
            let hxy = c.hom(x, y);
            let nr = hr.num_morphisms();
            let mut functors = Vec::with_capacity(hl.num_morphisms() * nr);
            for phi in hl.morphisms() {
                for psi in hr.morphisms() {
                    let obj_map: Vec<Obj> = hxy.morphisms().map(|s| sandwich(x2, x, y, y2, phi, s, psi)).collect();
                    let (il_s, il_d) = (hl.id(hl.src(phi)), hl.id(hl.dst(phi)));
                    let (ir_s, ir_d) = (hr.id(hr.src(psi)), hr.id(hr.dst(psi)));
                    let mor_map = src_tw
                        .pairs
                        .iter()
                        .enumerate()
                        .map(|(m, &(v, u))| {
                            let from = obj_map[src_tw.category.src(m)];
                            let v2 = sandwich(x2, x, y, y2, il_s, v, ir_s);
                            let u2 = sandwich(x2, x, y, y2, il_d, u, ir_d);
                            dst_tw.morphism(from, v2, u2).expect("sandwiched twisted morphism")
                        })
                        .collect();
                    functors.push(FinFunctor {
                        dom: src_tw.category.clone(),
                        cod: dst_tw.category.clone(),
                        obj_map,
                        mor_map,
                    });
                }
            }
            let (twl, twr) = (&tw[x2 * n + x], &tw[y * n + y2]);
            let mut comps = Vec::with_capacity(twl.pairs.len() * twr.pairs.len());
            for (bi, &(bm, bp)) in twl.pairs.iter().enumerate() {
                for (gi, &(gm, gp)) in twr.pairs.iter().enumerate() {
                    let (phi, psi) = (twl.category.src(bi), twr.category.src(gi));
                    let comp: Vec<Mor> = hxy
                        .morphisms()
                        .map(|s| {
                            let from = sandwich(x2, x, y, y2, phi, s, psi);
                            let v2 = sandwich(x2, x, y, y2, bm, hxy.id(hxy.src(s)), gm);
                            let u2 = sandwich(x2, x, y, y2, bp, hxy.id(hxy.dst(s)), gp);
                            dst_tw.morphism(from, v2, u2).expect("component of a twisted 2-cell")
                        })
                        .collect();
                    comps.push(comp);
                }
            }
            on_1cells.push(functors);
            on_2cells.push(comps);
        }
    }
    CatValuedTwoFunctor { base, values, on_1cells, on_2cells }
}

/// The twisted 2-cell 2-category `Tw₂(C)`, the Grothendieck construction of
/// [`twisted_hom_functor`]. Its objects are the 2-cells of `C`.
///
/// Fails with `ExplosionGuard` when the number of 2-cells to be examined
/// exceeds `ceiling`.
pub fn tw2(c: &FinTwoCategory, ceiling: u64) -> Result<Grothendieck, Tw2Error> {
    let n = c.num_objects() as u64;
    let cells: u64 = c.objects().map(|x| c.objects().map(|y| c.hom(x, y).num_morphisms() as u64).sum::<u64>()).sum();
    let max_hom = c
        .objects()
        .flat_map(|x| c.objects().map(move |y| (x, y)))
        .map(|(x, y)| c.hom(x, y).num_morphisms() as u64)
        .max()
        .unwrap_or(0);
    // each pair of 2-cells of Tw₂(C) is tested against every base 2-cell
    let estimate = cells.saturating_mul(cells).saturating_mul(max_hom.pow(4).max(1)).saturating_mul(n.max(1));
    if estimate > ceiling {
        return Err(TwoCatError::ExplosionGuard { ceiling, nodes: estimate }.into());
    }
    Ok(grothendieck(&twisted_hom_functor(c)))
}

/// The comparison 2-functor `Tw₂(B²A) → B²A` sending a 2-cell with base
/// components `(β, γ)`, `β = (e₋, e₊)`, to `e₊`.
pub fn b2_comparison(t: &Grothendieck, a: &Monoid) -> Result<TwoFunctor, Tw2Error> {
    let target = Arc::new(b2(a)?);
    let d = &*t.category;
    let base_hom = t.projection.cod.hom(0, 0);
    let twr = base_hom.num_morphisms();
    let tw_side = (twr as f64).sqrt().round() as usize;
    let ba = a.delooping();
    let tw_ba = crate::cat::twisted_arrow_data(&ba);
    if tw_ba.pairs.len() != tw_side {
        return Err(Tw2Error::Malformed("input is not the twisted 2-cell category of B²A".into()));
    }
    let mut one_cells = Vec::new();
    let mut two_cells = Vec::new();
    for x in d.objects() {
        for y in d.objects() {
            let h = d.hom_index(x, y);
            one_cells.push(vec![0; d.hom(x, y).num_objects()]);
            two_cells.push(
                t.two_cells[h]
                    .iter()
                    .map(|&m| {
                        let beta = m / tw_side;
                        tw_ba.pairs[beta].1
                    })
                    .collect(),
            );
        }
    }
    let p =
        TwoFunctor { dom: t.category.clone(), cod: target, obj_map: vec![0; d.num_objects()], one_cells, two_cells };
    p.validate()?;
    Ok(p)
}

/// A simplicial set whose cohomology computes derived limits over
/// `Tw₂(C)` with constant coefficients.
#[derive(Debug, Clone)]
pub struct QuillenModel {
    pub nerve: SimplicialSet,
    /// True when `C = B²A` and the 2-nerve of `C` stands in for that of
    /// `Tw₂(C)` through the comparison biequivalence.
    pub via_comparison: bool,
}

/// Builds the model for [`crate::homology::quillen_cohomology`]: the 2-nerve
/// of `Tw₂(C)` up to `dim`, or for `C = B²A` the 2-nerve of `C` once the
/// comparison `Tw₂(B²A) → B²A` is checked to be a biequivalence.
pub fn quillen_model(c: &FinTwoCategory, dim: usize, ceiling: u64) -> Result<QuillenModel, Tw2Error> {
    let t = tw2(c, ceiling)?;
    if c.num_objects() == 1 && c.hom(0, 0).num_objects() == 1 {
        if let Some(a) = Monoid::from_delooping(c.hom(0, 0)).filter(|a| a.is_commutative() && a.size() > 1) {
            let p = b2_comparison(&t, &a)?;
            if !check_biequivalence(&p).is_biequivalence() {
                return Err(Tw2Error::NotBiequivalent);
            }
            return Ok(QuillenModel { nerve: two_nerve(&p.cod, dim, ceiling)?, via_comparison: true });
        }
    }
    Ok(QuillenModel { nerve: two_nerve(&t.category, dim, ceiling)?, via_comparison: false })
}

/// The envelope `𝓔`: objects `(b, x) ∈ A²`; a morphism `(b, x) → (b', x')`
/// is `e± ∈ A²` with `b' = e₋ b e₊` and `x = e₋ x' e₊`. Object `(b, x)` has
/// index `b * |A| + x`.
pub fn envelope(a: &Monoid) -> Result<FinCategory, Tw2Error> {
    a.check_commutative()?;
    Ok(envelope_with_index(a).0)
}

fn envelope_with_index(a: &Monoid) -> (FinCategory, HashMap<(Obj, Obj, usize, usize), Mor>, Vec<(usize, usize)>) {
    let n = a.size();
    let names: Vec<String> = (0..n * n).map(|o| format!("({},{})", a.elements[o / n], a.elements[o % n])).collect();
    let mut mors = Vec::new();
    let mut index = HashMap::new();
    let mut parts = Vec::new();
    for o in 0..n * n {
        let b = o / n;
        for t in 0..n * n {
            let (b2, x2) = (t / n, t % n);
            for em in 0..n {
                for ep in 0..n {
                    if a.prod(&[em, b, ep]) == b2 && a.prod(&[em, x2, ep]) == o % n {
                        index.insert((o, t, em, ep), mors.len());
                        mors.push((format!("({},{}):{}", a.elements[em], a.elements[ep], names[o]), o, t));
                        parts.push((em, ep));
                    }
                }
            }
        }
    }
    let ids = (0..n * n).map(|o| index[&(o, o, a.unit, a.unit)]).collect();
    let ends: Vec<(Obj, Obj)> = mors.iter().map(|m| (m.1, m.2)).collect();
    let cat = FinCategory::from_parts(names, mors, ids, |g, f| {
        let ((fm, fp), (gm, gp)) = (parts[f], parts[g]);
        index[&(ends[f].0, ends[g].1, a.op(gm, fm), a.op(fp, gp))]
    });
    (cat, index, parts)
}

/// `B𝓔` with the monoidal product of `𝓔` as composition of 1-cells.
pub fn envelope_delooping(a: &Monoid) -> Result<FinTwoCategory, Tw2Error> {
    a.check_commutative()?;
    let n = a.size();
    let (e, index, parts) = envelope_with_index(a);
    let e = Arc::new(e);
    let tensor_obj = move |f: Obj, g: Obj| a.op(f / n, g / n) * n + a.op(f % n, g % n);
    let (e2, e3) = (e.clone(), e.clone());
    let (i2, i3) = (index.clone(), index);
    let (p2, p3) = (parts.clone(), parts);
    Ok(FinTwoCategory::from_parts(
        vec!["*".into()],
        vec![e],
        vec![a.unit * n + a.unit],
        |_, _, _, f, g| tensor_obj(f, g),
        move |_, _, _, m, g| i2[&(tensor_obj(e2.src(m), g), tensor_obj(e2.dst(m), g), p2[m].0, p2[m].1)],
        move |_, _, _, f, m| i3[&(tensor_obj(f, e3.src(m)), tensor_obj(f, e3.dst(m)), p3[m].0, p3[m].1)],
    ))
}

/// `𝒟_A`, the Grothendieck construction of `F_A: B𝓔 → Set` sending `(b, x)`
/// to `a ↦ b a x`.
pub fn d_cat(a: &Monoid) -> Result<Grothendieck, Tw2Error> {
    let base = Arc::new(envelope_delooping(a)?);
    let n = a.size();
    let set = Arc::new(FinCategory::discrete(a.elements.clone()));
    let e = base.hom(0, 0);
    let on_1cells = vec![e
        .objects()
        .map(|o| {
            let obj_map: Vec<Obj> = (0..n).map(|v| a.prod(&[o / n, v, o % n])).collect();
            FinFunctor { dom: set.clone(), cod: set.clone(), mor_map: obj_map.clone(), obj_map }
        })
        .collect()];
    let on_2cells =
        vec![e.morphisms().map(|m| (0..n).map(|v| a.prod(&[e.src(m) / n, v, e.src(m) % n])).collect()).collect()];
    let f = CatValuedTwoFunctor { base, values: vec![set], on_1cells, on_2cells };
    Ok(grothendieck(&f))
}

/// The mapping category of `𝒟_ℕ` from `m` to `n`: objects `0 ≤ b ≤ n − m`,
/// morphisms `b → b'` the integers `0 ≤ e ≤ b' − b`, composed by addition.
pub fn d_nat_hom(m: usize, n: usize) -> FinCategory {
    if m > n {
        return FinCategory::empty();
    }
    let k = n - m;
    let mut mors = Vec::new();
    let mut index = HashMap::new();
    for b in 0..=k {
        for b2 in b..=k {
            for e in 0..=b2 - b {
                index.insert((b, b2, e), mors.len());
                mors.push((format!("{e}:{b}->{b2}"), b, b2));
            }
        }
    }
    let ids = (0..=k).map(|b| index[&(b, b, 0)]).collect();
    let names = (0..=k).map(|b| b.to_string()).collect();
    let meta: Vec<(usize, usize, usize)> = {
        let mut v = vec![(0, 0, 0); mors.len()];
        for (&key, &i) in &index {
            v[i] = key;
        }
        v
    };
    FinCategory::from_parts(names, mors, ids, |g, f| {
        let ((b, _, e1), (_, b3, e2)) = (meta[f], meta[g]);
        index[&(b, b3, e1 + e2)]
    })
}

/// The mapping category of `Tw₂(B²A)` from `a` to `a'`: objects
/// `(b, c, d₋, d₊)` with `d₋ b a c d₊ = a'`, morphisms `(e±, f±)` into
/// `(e₋be₊, f₋cf₊, d'±)` with `d± = e± d'± f±`.
pub fn tw2_b2_hom(a: &Monoid, x: usize, y: usize) -> FinCategory {
    let n = a.size();
    let objects: Vec<[usize; 4]> = tuples(n, 4)
        .into_iter()
        .map(|t| [t[0], t[1], t[2], t[3]])
        .filter(|&[b, c, dm, dp]| a.prod(&[dm, b, x, c, dp]) == y)
        .collect();
    let pos: HashMap<[usize; 4], Obj> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let mut mors = Vec::new();
    let mut meta: Vec<[usize; 4]> = Vec::new();
    let mut index = HashMap::new();
    for (i, &[b, c, dm, dp]) in objects.iter().enumerate() {
        for e in tuples(n, 4) {
            let [em, ep, fm, fp] = [e[0], e[1], e[2], e[3]];
            let (b2, c2) = (a.prod(&[em, b, ep]), a.prod(&[fm, c, fp]));
            for dm2 in 0..n {
                if a.prod(&[em, dm2, fm]) != dm {
                    continue;
                }
                for dp2 in 0..n {
                    if a.prod(&[ep, dp2, fp]) != dp {
                        continue;
                    }
                    if let Some(&j) = pos.get(&[b2, c2, dm2, dp2]) {
                        index.insert((i, j, [em, ep, fm, fp]), mors.len());
                        mors.push((format!("{em},{ep},{fm},{fp}@{i}>{j}"), i, j));
                        meta.push([em, ep, fm, fp]);
                    }
                }
            }
        }
    }
    let u = a.unit;
    let ids = (0..objects.len()).map(|i| index[&(i, i, [u, u, u, u])]).collect();
    let ends: Vec<(Obj, Obj)> = mors.iter().map(|m| (m.1, m.2)).collect();
    let names = objects.iter().map(|o| format!("({},{},{},{})", o[0], o[1], o[2], o[3])).collect();
    FinCategory::from_parts(names, mors, ids, |g, f| {
        let (p, q) = (meta[f], meta[g]);
        index[&(ends[f].0, ends[g].1, [a.op(q[0], p[0]), a.op(p[1], q[1]), a.op(q[2], p[2]), a.op(p[3], q[3])])]
    })
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    out
}

/// Result of [`pi_fiber_check`] for one object `(b, x)` of `Map_{𝒟_A}(a, a')`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberOutcome {
    pub b: usize,
    pub x: usize,
    pub fiber_objects: usize,
    /// True when `(c, d₋, d₊) = (x, 1, 1)` is a terminal object of the fiber.
    pub terminal: bool,
}

/// The fibers of `π_{a,a'}: Map_{Tw₂(B²A)}(a, a') → Map_{𝒟_A}(a, a')`,
/// `(b, c, d±) ↦ (b, d₋ c d₊)`.
///
/// The fiber over `(b, x)` has objects `(c, d±)` with `d₋ c d₊ = x` and
/// morphisms `f±` with `d₊ = f₊ d'₊`, `c' = f₋ c f₊`, `d₋ = d'₋ f₋` (the
/// morphisms of the source lying over the identity `e± = (1, 1)`).
pub fn pi_fiber_check(a: &Monoid, x0: usize, y0: usize) -> Result<Vec<FiberOutcome>, Tw2Error> {
    a.check_commutative()?;
    let n = a.size();
    let mut out = Vec::new();
    for b in 0..n {
        for x in 0..n {
            if a.prod(&[b, x0, x]) != y0 {
                continue;
            }
            let fiber = pi_fiber(a, x);
            let top =
                fiber.object_by_name(&format!("({},{},{})", x, a.unit, a.unit)).expect("(x, 1, 1) lies in the fiber");
            out.push(FiberOutcome { b, x, fiber_objects: fiber.num_objects(), terminal: is_terminal(&fiber, top) });
        }
    }
    Ok(out)
}

/// The fiber of `π` over `(b, x)`; it does not depend on `b`.
pub fn pi_fiber(a: &Monoid, x: usize) -> FinCategory {
    let n = a.size();
    let objects: Vec<[usize; 3]> =
        tuples(n, 3).into_iter().map(|t| [t[0], t[1], t[2]]).filter(|&[c, dm, dp]| a.prod(&[dm, c, dp]) == x).collect();
    let mut mors = Vec::new();
    let mut meta = Vec::new();
    let mut index = HashMap::new();
    for (i, &[c, dm, dp]) in objects.iter().enumerate() {
        for fm in 0..n {
            for fp in 0..n {
                let c2 = a.prod(&[fm, c, fp]);
                for (j, &[c3, dm2, dp2]) in objects.iter().enumerate() {
                    if c3 == c2 && a.op(fp, dp2) == dp && a.op(dm2, fm) == dm {
                        index.insert((i, j, fm, fp), mors.len());
                        mors.push((format!("({},{})@{i}>{j}", fm, fp), i, j));
                        meta.push((fm, fp));
                    }
                }
            }
        }
    }
    let ids = (0..objects.len()).map(|i| index[&(i, i, a.unit, a.unit)]).collect();
    let ends: Vec<(Obj, Obj)> = mors.iter().map(|m| (m.1, m.2)).collect();
    let names = objects.iter().map(|o| format!("({},{},{})", o[0], o[1], o[2])).collect();
    FinCategory::from_parts(names, mors, ids, |g, f| {
        let ((fm, fp), (gm, gp)) = (meta[f], meta[g]);
        index[&(ends[f].0, ends[g].1, a.op(gm, fm), a.op(fp, gp))]
    })
}

/// The functor `π_{a,a'}` between the explicit mapping categories
/// [`tw2_b2_hom`] and the hom of [`d_cat`].
pub fn pi_functor(a: &Monoid, x: usize, y: usize) -> Result<FinFunctor, Tw2Error> {
    let src = Arc::new(tw2_b2_hom(a, x, y));
    let d = d_cat(a)?;
    let cod = d.category.hom_arc(x, y).clone();
    let n = a.size();
    let h = d.category.hom_index(x, y);
    let e = d.projection.cod.hom(0, 0).clone();
    let dpos: HashMap<(usize, usize), Obj> =
        d.one_cells[h].iter().enumerate().map(|(i, &(o, _))| ((o / n, o % n), i)).collect();
    let parse = |s: &str| -> Vec<usize> {
        s.trim_matches(|c| c == '(' || c == ')').split(',').map(|t| t.parse().expect("index")).collect()
    };
    let obj_map: Vec<Obj> = src
        .objects()
        .map(|o| {
            let v = parse(src.object_name(o));
            dpos[&(v[0], a.prod(&[v[2], v[1], v[3]]))]
        })
        .collect();
    let mor_map = src
        .morphisms()
        .map(|m| {
            let name = src.morphism_name(m);
            let parts: Vec<usize> =
                name.split('@').next().expect("name").split(',').map(|t| t.parse().expect("index")).collect();
            let (s, t) = (obj_map[src.src(m)], obj_map[src.dst(m)]);
            let hom = cod.hom(s, t);
            *hom.iter()
                .find(|&&k| {
                    let base = d.two_cells[h][k];
                    let nm = e.morphism_name(base);
                    nm.starts_with(&format!("({},{}):", a.elements[parts[0]], a.elements[parts[1]]))
                })
                .expect("image of a twisted 2-cell")
        })
        .collect();
    let f = FinFunctor { dom: src, cod, obj_map, mor_map };
    f.validate().map_err(|e| Tw2Error::Malformed(format!("π is not a functor: {e}")))?;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{fiber, find_isomorphism, twisted_arrow};
    use crate::two_cat::{check_biequivalence, from_one_category, underlying_one_category, DEFAULT_CEILING};

    #[test]
    fn monoid_validation() {
        assert!(Monoid::cyclic(4).is_commutative());
        assert!(!Monoid::symmetric3().is_commutative());
        let bad = Monoid::new(vec!["0".into(), "1".into()], vec![0, 1, 1, 1], 1);
        assert!(matches!(bad, Err(Tw2Error::NotUnital(_))));
        assert!(matches!(b2(&Monoid::symmetric3()), Err(Tw2Error::NotCommutative(..))));
        assert!(matches!(b2_unchecked(&Monoid::symmetric3()).validate(), Err(TwoCatError::InterchangeFailure { .. })));
    }

    #[test]
    fn monoid_counts() {
        // commutative monoids of order 1, 2, 3 up to isomorphism
        assert_eq!(commutative_monoids(1).len(), 1);
        assert_eq!(commutative_monoids(2).len(), 2);
        assert_eq!(commutative_monoids(3).len(), 5);
        assert_eq!(commutative_monoids(4).len(), 19);
    }

    #[test]
    fn twisted_functor_is_valid() {
        for c in [b2(&Monoid::cyclic(2)).unwrap(), from_one_category(&FinCategory::ordinal(1))] {
            let f = twisted_hom_functor(&c);
            f.validate().unwrap();
            let t = tw2(&c, DEFAULT_CEILING).unwrap();
            t.category.validate().unwrap();
        }
    }

    #[test]
    fn tw2_of_interval_is_the_cospan() {
        let t = tw2(&from_one_category(&FinCategory::ordinal(1)), DEFAULT_CEILING).unwrap();
        let u = Arc::new(underlying_one_category(&t.category).unwrap());
        let (tw, _) = twisted_arrow(&FinCategory::ordinal(1));
        assert!(find_isomorphism(&u, &tw.category).is_some());
        let t = tw2(&FinTwoCategory::terminal(), DEFAULT_CEILING).unwrap();
        assert_eq!((t.category.num_objects(), t.category.num_one_cells(), t.category.num_two_cells()), (1, 1, 1));
    }

    #[test]
    fn tw2_of_b2_matches_explicit_description() {
        let a = Monoid::cyclic(2);
        let t = tw2(&b2(&a).unwrap(), DEFAULT_CEILING).unwrap();
        assert_eq!(t.category.num_objects(), 2);
        for x in 0..2 {
            for y in 0..2 {
                let explicit = Arc::new(tw2_b2_hom(&a, x, y));
                let ours = t.category.hom_arc(x, y);
                assert_eq!(
                    (explicit.num_objects(), explicit.num_morphisms()),
                    (ours.num_objects(), ours.num_morphisms())
                );
                assert!(find_isomorphism(&explicit, ours).is_some());
            }
        }
        let p = b2_comparison(&t, &a).unwrap();
        assert!(check_biequivalence(&p).is_biequivalence());
    }

    #[test]
    fn envelope_and_d_cat() {
        let a = Monoid::cyclic(2);
        let e = envelope(&a).unwrap();
        e.validate().unwrap();
        assert_eq!((e.num_objects(), e.num_morphisms()), (4, 16));
        let d = d_cat(&a).unwrap();
        d.category.validate().unwrap();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(d.category.hom(x, y).num_objects(), 2);
            }
        }
        let t = d_cat(&Monoid::trivial()).unwrap();
        assert_eq!((t.category.num_objects(), t.category.num_one_cells(), t.category.num_two_cells()), (1, 1, 1));
    }

    #[test]
    fn d_nat_examples() {
        assert_eq!(d_nat_hom(3, 1).num_objects(), 0);
        let p = d_nat_hom(2, 2);
        assert_eq!((p.num_objects(), p.num_morphisms()), (1, 1));
        let c = d_nat_hom(0, 1);
        c.validate().unwrap();
        assert_eq!((c.num_objects(), c.num_morphisms()), (2, 4));
        assert_eq!(c.hom(0, 1).len(), 2);
    }

    #[test]
    fn pi_fibers() {
        for a in [Monoid::trivial(), Monoid::cyclic(2), Monoid::cyclic(3)] {
            for x in 0..a.size() {
                for y in 0..a.size() {
                    let report = pi_fiber_check(&a, x, y).unwrap();
                    assert!(!report.is_empty());
                    assert!(report.iter().all(|f| f.terminal));
                }
            }
        }
        for a in commutative_monoids(3) {
            envelope(&a).unwrap().validate().unwrap();
            for x in 0..a.size() {
                tw2_b2_hom(&a, x, x).validate().unwrap();
                pi_fiber(&a, x).validate().unwrap();
            }
        }
        // the directly built fiber agrees with the fiber of the functor
        let a = Monoid::cyclic(2);
        let pi = pi_functor(&a, 0, 1).unwrap();
        let d = d_cat(&a).unwrap();
        let h = d.category.hom_index(0, 1);
        for y in pi.cod.objects() {
            let (f, _) = fiber(&pi, y);
            let x = d.one_cells[h][y].0 % a.size();
            let direct = Arc::new(pi_fiber(&a, x));
            assert!(find_isomorphism(&Arc::new(f), &direct).is_some());
        }
    }
}
