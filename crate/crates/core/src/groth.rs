//! The Grothendieck construction of a strict 2-functor into categories,
//! opfibration diagnostics, base change, and coinitiality evidence.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::cat::{comma, FinCategory, FinFunctor, Mor, Obj};
use crate::homology::{contractibility, AbGroup, Contractibility, ContractibilityCertificate, HomologyError};
use crate::two_cat::{from_one_category, FinTwoCategory, TwoCatError, TwoFunctor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrothError {
    #[error("invalid category-valued 2-functor: {0}")]
    InvalidFunctor(String),
    #[error("hom functor {from} → {to} is not a discrete fibration")]
    NotFiberedInSets { from: String, to: String },
    #[error(transparent)]
    TwoCat(#[from] TwoCatError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// A strict 2-functor `F: C → Cat` with finite values.
///
/// Hom-indexed tables follow the base: `on_1cells[h][f]` is `f_!` for the
/// 1-cell `f` of hom `h = x * n + y`, and `on_2cells[h][σ][X]` is the
/// component at `X ∈ F(x)` of `σ_!: f_! ⇒ g_!`.
#[derive(Debug, Clone)]
pub struct CatValuedTwoFunctor {
    pub base: Arc<FinTwoCategory>,
    pub values: Vec<Arc<FinCategory>>,
    pub on_1cells: Vec<Vec<FinFunctor>>,
    pub on_2cells: Vec<Vec<Vec<Mor>>>,
}

impl CatValuedTwoFunctor {
    /// The 2-functor constant at `value`.
    pub fn constant(base: Arc<FinTwoCategory>, value: Arc<FinCategory>) -> CatValuedTwoFunctor {
        let n = base.num_objects();
        let mut on_1cells = Vec::with_capacity(n * n);
        let mut on_2cells = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let h = base.hom(x, y);
                on_1cells.push(h.objects().map(|_| FinFunctor::identity(value.clone())).collect());
                on_2cells.push(h.morphisms().map(|_| value.objects().map(|v| value.id(v)).collect()).collect());
            }
        }
        CatValuedTwoFunctor { values: vec![value; n], base, on_1cells, on_2cells }
    }

    /// A functor `C → Cat` from a 1-category, viewed as a 2-functor on
    /// `from_one_category(C)`. `on_morphisms[m]` is the functor of morphism `m`.
    pub fn from_functor(
        c: &FinCategory,
        values: Vec<Arc<FinCategory>>,
        on_morphisms: Vec<FinFunctor>,
    ) -> CatValuedTwoFunctor {
        let base = Arc::new(from_one_category(c));
        let mut on_1cells = Vec::new();
        let mut on_2cells = Vec::new();
        for x in c.objects() {
            for y in c.objects() {
                let fy = &values[y];
                on_1cells.push(c.hom(x, y).iter().map(|&m| on_morphisms[m].clone()).collect());
                on_2cells.push(
                    c.hom(x, y).iter().map(|&m| on_morphisms[m].obj_map.iter().map(|&v| fy.id(v)).collect()).collect(),
                );
            }
        }
        CatValuedTwoFunctor { base, values, on_1cells, on_2cells }
    }

    /// `f_!` for a 1-cell `f: x → y`.
    pub fn push(&self, x: Obj, y: Obj, f: Obj) -> &FinFunctor {
        &self.on_1cells[self.base.hom_index(x, y)][f]
    }

    /// The component `σ_!(v)` for a 2-cell `σ` of `hom(x, y)`.
    pub fn component(&self, x: Obj, y: Obj, sigma: Mor, v: Obj) -> Mor {
        self.on_2cells[self.base.hom_index(x, y)][sigma][v]
    }

    /// Exhaustively checks strict functoriality on 1- and 2-cells and the
    /// naturality of every component family.
    pub fn validate(&self) -> Result<(), GrothError> {
        let c = &*self.base;
        let n = c.num_objects();
        let bad = |s: String| Err(GrothError::InvalidFunctor(s));
        if self.values.len() != n || self.on_1cells.len() != n * n || self.on_2cells.len() != n * n {
            return bad("tables do not match the base".into());
        }
        for x in 0..n {
            for y in 0..n {
                let h = c.hom_index(x, y);
                let hom = c.hom(x, y);
                let (fx, fy) = (&self.values[x], &self.values[y]);
                if self.on_1cells[h].len() != hom.num_objects() || self.on_2cells[h].len() != hom.num_morphisms() {
                    return bad(format!("hom {x}→{y} tables have the wrong length"));
                }
                for (f, fun) in self.on_1cells[h].iter().enumerate() {
                    if *fun.dom != **fx || *fun.cod != **fy {
                        return bad(format!("1-cell `{}` acts between the wrong categories", hom.object_name(f)));
                    }
                    fun.validate()
                        .map_err(|e| GrothError::InvalidFunctor(format!("1-cell `{}`: {e}", hom.object_name(f))))?;
                }
                for s in hom.morphisms() {
                    let comps = &self.on_2cells[h][s];
                    let (f, g) = (&self.on_1cells[h][hom.src(s)], &self.on_1cells[h][hom.dst(s)]);
                    let name = hom.morphism_name(s);
                    if comps.len() != fx.num_objects() {
                        return bad(format!("2-cell `{name}` has the wrong number of components"));
                    }
                    for v in fx.objects() {
                        let m = comps[v];
                        if m >= fy.num_morphisms() || fy.src(m) != f.obj_map[v] || fy.dst(m) != g.obj_map[v] {
                            return bad(format!("component of `{name}` at `{}` is ill-typed", fx.object_name(v)));
                        }
                    }
                    for a in fx.morphisms() {
                        let lhs = fy.compose(g.mor_map[a], comps[fx.src(a)]);
                        let rhs = fy.compose(comps[fx.dst(a)], f.mor_map[a]);
                        if lhs != rhs {
                            return bad(format!("2-cell `{name}` is not natural at `{}`", fx.morphism_name(a)));
                        }
                    }
                    if hom.is_identity(s) && fx.objects().any(|v| comps[v] != fy.id(f.obj_map[v])) {
                        return bad(format!("identity 2-cell `{name}` has a non-identity component"));
                    }
                }
                for t in hom.morphisms() {
                    for &s in hom.incoming(hom.src(t)) {
                        let ts = hom.compose(t, s);
                        for v in fx.objects() {
                            let expected = fy.compose(self.on_2cells[h][t][v], self.on_2cells[h][s][v]);
                            if self.on_2cells[h][ts][v] != expected {
                                return bad(format!("vertical composite `{}` is not preserved", hom.morphism_name(ts)));
                            }
                        }
                    }
                }
            }
        }
        for x in 0..n {
            let idf = &self.on_1cells[c.hom_index(x, x)][c.id1(x)];
            if idf.obj_map.iter().enumerate().any(|(i, &v)| i != v)
                || idf.mor_map.iter().enumerate().any(|(i, &v)| i != v)
            {
                return bad(format!("identity 1-cell of `{}` does not act as the identity", c.object_name(x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz, hxz) = (c.hom_index(x, y), c.hom_index(y, z), c.hom_index(x, z));
                    for f in c.hom(x, y).objects() {
                        for g in c.hom(y, z).objects() {
                            let fg = &self.on_1cells[hxz][c.comp1(x, y, z, f, g)];
                            let expected = self.on_1cells[hxy][f].then(&self.on_1cells[hyz][g]);
                            if fg.obj_map != expected.obj_map || fg.mor_map != expected.mor_map {
                                return bad("composite of 1-cells is not preserved".into());
                            }
                        }
                    }
                    for s in c.hom(x, y).morphisms() {
                        for g in c.hom(y, z).objects() {
                            let w = c.whisker_right(x, y, z, s, g);
                            let gf = &self.on_1cells[hyz][g];
                            for v in self.values[x].objects() {
                                if self.on_2cells[hxz][w][v] != gf.mor_map[self.on_2cells[hxy][s][v]] {
                                    return bad("right whiskering is not preserved".into());
                                }
                            }
                        }
                    }
                    for f in c.hom(x, y).objects() {
                        for t in c.hom(y, z).morphisms() {
                            let w = c.whisker_left(x, y, z, f, t);
                            let ff = &self.on_1cells[hxy][f];
                            for v in self.values[x].objects() {
                                if self.on_2cells[hxz][w][v] != self.on_2cells[hyz][t][ff.obj_map[v]] {
                                    return bad("left whiskering is not preserved".into());
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Restriction along a 2-functor `g: C' → C`.
    pub fn restrict(&self, g: &TwoFunctor) -> CatValuedTwoFunctor {
        let a = &*g.dom;
        let mut on_1cells = Vec::new();
        let mut on_2cells = Vec::new();
        for x in a.objects() {
            for y in a.objects() {
                let h = a.hom_index(x, y);
                let hb = self.base.hom_index(g.obj_map[x], g.obj_map[y]);
                on_1cells.push(g.one_cells[h].iter().map(|&f| self.on_1cells[hb][f].clone()).collect());
                on_2cells.push(g.two_cells[h].iter().map(|&s| self.on_2cells[hb][s].clone()).collect());
            }
        }
        CatValuedTwoFunctor {
            base: g.dom.clone(),
            values: g.obj_map.iter().map(|&x| self.values[x].clone()).collect(),
            on_1cells,
            on_2cells,
        }
    }
}

/// The total 2-category `∫F` with its projection and the decoding of its
/// cells.
#[derive(Debug, Clone)]
pub struct Grothendieck {
    pub category: Arc<FinTwoCategory>,
    pub projection: TwoFunctor,
    /// Object `i` is `(A, X)` with `X ∈ F(A)`.
    pub objects: Vec<(Obj, Obj)>,
    /// `one_cells[h][u] = (f, φ)` with `φ: f_!X → Y`.
    pub one_cells: Vec<Vec<(Obj, Mor)>>,
    /// `two_cells[h][m] = σ`, the underlying base 2-cell.
    pub two_cells: Vec<Vec<Mor>>,
}

/// Builds `∫F`: objects `(A, X)`, 1-cells `(f, φ: f_!X → Y)`, and 2-cells
/// `(f, φ) ⇒ (g, ψ)` the base 2-cells `σ: f ⇒ g` with `φ = ψ ∘ σ_!(X)`.
/// Composition is `(f, φ) ; (g, ψ) = (f ; g, ψ ∘ g_!(φ))`.
pub fn grothendieck(f: &CatValuedTwoFunctor) -> Grothendieck {
    let c = &*f.base;
    let nb = c.num_objects();
    let mut objects = Vec::new();
    let mut names = Vec::new();
    for a in 0..nb {
        for v in f.values[a].objects() {
            objects.push((a, v));
            names.push(format!("({},{})", c.object_name(a), f.values[a].object_name(v)));
        }
    }
    let n = objects.len();
    let mut homs = Vec::with_capacity(n * n);
    let mut one_cells = Vec::with_capacity(n * n);
    let mut two_cells = Vec::with_capacity(n * n);
    let mut one_index: Vec<HashMap<(Obj, Mor), Obj>> = Vec::with_capacity(n * n);
    let mut two_index: Vec<HashMap<(Obj, Obj, Mor), Mor>> = Vec::with_capacity(n * n);
    for &(a, xv) in &objects {
        for &(b, yv) in &objects {
            let hb = c.hom(a, b);
            let fb = &*f.values[b];
            let h = c.hom_index(a, b);
            let mut cells = Vec::new();
            let mut cell_names = Vec::new();
            for g in hb.objects() {
                let gx = f.on_1cells[h][g].obj_map[xv];
                for &phi in fb.hom(gx, yv) {
                    cells.push((g, phi));
                    cell_names.push(format!("({},{})", hb.object_name(g), fb.morphism_name(phi)));
                }
            }
            let idx: HashMap<(Obj, Mor), Obj> = cells.iter().enumerate().map(|(i, &k)| (k, i)).collect();
            let mut mors = Vec::new();
            let mut sigmas = Vec::new();
            let mut midx = HashMap::new();
            for (si, &(g, phi)) in cells.iter().enumerate() {
                for (ti, &(g2, psi)) in cells.iter().enumerate() {
                    for &s in hb.hom(g, g2) {
                        if fb.compose(psi, f.on_2cells[h][s][xv]) == phi {
                            midx.insert((si, ti, s), mors.len());
                            mors.push((
                                format!("{}:{}=>{}", hb.morphism_name(s), cell_names[si], cell_names[ti]),
                                si,
                                ti,
                            ));
                            sigmas.push(s);
                        }
                    }
                }
            }
            let ids = cells.iter().enumerate().map(|(i, &(g, _))| midx[&(i, i, hb.id(g))]).collect();
            let srcs: Vec<Obj> = mors.iter().map(|m| m.1).collect();
            let dsts: Vec<Obj> = mors.iter().map(|m| m.2).collect();
            let cat = FinCategory::from_parts(cell_names, mors, ids, |t, s| {
                midx[&(srcs[s], dsts[t], hb.compose(sigmas[t], sigmas[s]))]
            });
            homs.push(Arc::new(cat));
            one_cells.push(cells);
            two_cells.push(sigmas);
            one_index.push(idx);
            two_index.push(midx);
        }
    }
    let id1 =
        objects.iter().enumerate().map(|(i, &(a, xv))| one_index[i * n + i][&(c.id1(a), f.values[a].id(xv))]).collect();
    let comp = |x: Obj, y: Obj, z: Obj, u: Obj, w: Obj| -> Obj {
        let ((a, _), (b, _), (cz, _)) = (objects[x], objects[y], objects[z]);
        let (g1, phi) = one_cells[x * n + y][u];
        let (g2, psi) = one_cells[y * n + z][w];
        let pushed = f.on_1cells[c.hom_index(b, cz)][g2].mor_map[phi];
        let composite = f.values[cz].compose(psi, pushed);
        one_index[x * n + z][&(c.comp1(a, b, cz, g1, g2), composite)]
    };
    let category = FinTwoCategory::from_parts(
        names,
        homs.clone(),
        id1,
        comp,
        |x, y, z, m, w| {
            let ((a, _), (b, _), (cz, _)) = (objects[x], objects[y], objects[z]);
            let hom = &homs[x * n + y];
            let s = two_cells[x * n + y][m];
            let g = one_cells[y * n + z][w].0;
            let from = comp(x, y, z, hom.src(m), w);
            let to = comp(x, y, z, hom.dst(m), w);
            two_index[x * n + z][&(from, to, c.whisker_right(a, b, cz, s, g))]
        },
        |x, y, z, u, m| {
            let ((a, _), (b, _), (cz, _)) = (objects[x], objects[y], objects[z]);
            let hom = &homs[y * n + z];
            let t = two_cells[y * n + z][m];
            let g = one_cells[x * n + y][u].0;
            let from = comp(x, y, z, u, hom.src(m));
            let to = comp(x, y, z, u, hom.dst(m));
            two_index[x * n + z][&(from, to, c.whisker_left(a, b, cz, g, t))]
        },
    );
    let category = Arc::new(category);
    let projection = TwoFunctor {
        dom: category.clone(),
        cod: f.base.clone(),
        obj_map: objects.iter().map(|o| o.0).collect(),
        one_cells: one_cells.iter().map(|cells| cells.iter().map(|c| c.0).collect()).collect(),
        two_cells: two_cells.clone(),
    };
    Grothendieck { category, projection, objects, one_cells, two_cells }
}

/// Checks that the hom functor `p: D(a, b) → C(pa, pb)` has unique lifts of
/// 2-cells with prescribed target.
pub fn is_discrete_fibration(p: &TwoFunctor, a: Obj, b: Obj) -> bool {
    let d = p.dom.hom(a, b);
    let c = p.cod.hom(p.obj_map[a], p.obj_map[b]);
    let h = p.dom.hom_index(a, b);
    d.objects().all(|u| {
        let mut counts: HashMap<Mor, usize> = HashMap::new();
        for &m in d.incoming(u) {
            *counts.entry(p.two_cells[h][m]).or_default() += 1;
        }
        let pu = p.one_cells[h][u];
        counts.len() == c.incoming(pu).len()
            && counts.values().all(|&k| k == 1)
            && c.incoming(pu).iter().all(|s| counts.contains_key(s))
    })
}

fn require_fibered(p: &TwoFunctor, a: Obj, b: Obj) -> Result<(), GrothError> {
    if is_discrete_fibration(p, a, b) {
        Ok(())
    } else {
        Err(GrothError::NotFiberedInSets {
            from: p.dom.object_name(a).to_string(),
            to: p.dom.object_name(b).to_string(),
        })
    }
}

/// Strict coCartesian test for the 1-cell `e: x → y` of `D`: for every
/// object `z` and every base 1-cell `g: p(y) → p(z)`, precomposition with `e`
/// maps the 1-cells over `g` bijectively onto the 1-cells over `p(e) ; g`.
///
/// Valid only when the hom functors out of `x` and `y` are discrete
/// fibrations; otherwise an error names the offending hom pair.
pub fn is_cocartesian(p: &TwoFunctor, x: Obj, y: Obj, e: Obj) -> Result<bool, GrothError> {
    let d = &*p.dom;
    for z in d.objects() {
        require_fibered(p, x, z)?;
        require_fibered(p, y, z)?;
    }
    Ok(cocartesian_unchecked(p, x, y, e))
}

fn cocartesian_unchecked(p: &TwoFunctor, x: Obj, y: Obj, e: Obj) -> bool {
    let (d, c) = (&*p.dom, &*p.cod);
    let (px, py) = (p.obj_map[x], p.obj_map[y]);
    let pe = p.one_cells[d.hom_index(x, y)][e];
    for z in d.objects() {
        let pz = p.obj_map[z];
        let (hyz, hxz) = (d.hom_index(y, z), d.hom_index(x, z));
        for g in c.hom(py, pz).objects() {
            let target = c.comp1(px, py, pz, pe, g);
            let mut image: Vec<Obj> =
                d.hom(y, z).objects().filter(|&u| p.one_cells[hyz][u] == g).map(|u| d.comp1(x, y, z, e, u)).collect();
            let mut over: Vec<Obj> = d.hom(x, z).objects().filter(|&w| p.one_cells[hxz][w] == target).collect();
            image.sort_unstable();
            let before = image.len();
            image.dedup();
            over.sort_unstable();
            if image.len() != before || image != over {
                return false;
            }
        }
    }
    true
}

/// A reason why a 2-functor fails to be opfibered in categories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OpfibrationFailure {
    /// The hom functor between these objects is not a discrete fibration.
    NotDiscreteFibration { source: Obj, target: Obj },
    /// No coCartesian lift of the base 1-cell `one_cell: p(object) → target`.
    NoCocartesianLift { object: Obj, target: Obj, one_cell: Obj },
}

/// Outcome of [`is_opfibered`]; no failures means opfibered in categories.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpfibrationReport {
    pub failures: Vec<OpfibrationFailure>,
}

impl OpfibrationReport {
    pub fn is_opfibered(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that every hom functor of `p` is a discrete fibration and that
/// every base 1-cell out of an image object has a coCartesian lift.
pub fn is_opfibered(p: &TwoFunctor) -> OpfibrationReport {
    let (d, c) = (&*p.dom, &*p.cod);
    let mut failures = Vec::new();
    for a in d.objects() {
        for b in d.objects() {
            if !is_discrete_fibration(p, a, b) {
                failures.push(OpfibrationFailure::NotDiscreteFibration { source: a, target: b });
            }
        }
    }
    if !failures.is_empty() {
        return OpfibrationReport { failures };
    }
    for x in d.objects() {
        let px = p.obj_map[x];
        for t in c.objects() {
            for f in c.hom(px, t).objects() {
                let found = d.objects().filter(|&y| p.obj_map[y] == t).any(|y| {
                    let h = d.hom_index(x, y);
                    d.hom(x, y).objects().any(|e| p.one_cells[h][e] == f && cocartesian_unchecked(p, x, y, e))
                });
                if !found {
                    failures.push(OpfibrationFailure::NoCocartesianLift { object: x, target: t, one_cell: f });
                }
            }
        }
    }
    OpfibrationReport { failures }
}

/// The fiber of `p` over the base object `a`: objects over `a` and 1-cells
/// over `id_a`, composed in `D`. Returns `None` when some non-identity
/// 2-cell lies over an identity 2-cell, i.e. the fiber is not a 1-category.
pub fn fiber_over(p: &TwoFunctor, a: Obj) -> Option<FinCategory> {
    let (d, c) = (&*p.dom, &*p.cod);
    let objs: Vec<Obj> = d.objects().filter(|&x| p.obj_map[x] == a).collect();
    let id_a = c.id1(a);
    let id_2 = c.hom(a, a).id(id_a);
    let mut mors = Vec::new();
    let mut index = HashMap::new();
    for (i, &x) in objs.iter().enumerate() {
        for (j, &y) in objs.iter().enumerate() {
            let h = d.hom_index(x, y);
            let hom = d.hom(x, y);
            for u in hom.objects().filter(|&u| p.one_cells[h][u] == id_a) {
                let over_id = hom.morphisms().filter(|&m| p.two_cells[h][m] == id_2);
                if over_id.filter(|&m| !hom.is_identity(m)).count() > 0 {
                    return None;
                }
                index.insert((x, y, u), mors.len());
                mors.push((hom.object_name(u).to_string(), i, j, u));
            }
        }
    }
    let ids = objs.iter().map(|&x| index[&(x, x, d.id1(x))]).collect();
    let triples: Vec<(Obj, Obj, Obj)> = mors.iter().map(|m| (objs[m.1], objs[m.2], m.3)).collect();
    let names = objs.iter().map(|&x| d.object_name(x).to_string()).collect();
    let list = mors.iter().map(|m| (m.0.clone(), m.1, m.2)).collect();
    Some(FinCategory::from_parts(names, list, ids, |g, f| {
        let (x, y, u) = triples[f];
        let (_, z, w) = triples[g];
        index[&(x, z, d.comp1(x, y, z, u, w))]
    }))
}

/// The strict pullback `g*D` of `p: D → C` along `g: C' → C` with the
/// decoding of its cells as pairs agreeing in `C`.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub category: Arc<FinTwoCategory>,
    /// Projection to `C'`.
    pub projection: TwoFunctor,
    pub objects: Vec<(Obj, Obj)>,
    pub one_cells: Vec<Vec<(Obj, Obj)>>,
    pub two_cells: Vec<Vec<(Mor, Mor)>>,
}

/// Strict pullback of `p: D → C` along `g: C' → C`.
pub fn pullback(p: &TwoFunctor, g: &TwoFunctor) -> Pullback {
    let (d, cp) = (&*p.dom, &*g.dom);
    let mut objects = Vec::new();
    for x in cp.objects() {
        for y in d.objects() {
            if g.obj_map[x] == p.obj_map[y] {
                objects.push((x, y));
            }
        }
    }
    let n = objects.len();
    let names = objects.iter().map(|&(x, y)| format!("({},{})", cp.object_name(x), d.object_name(y))).collect();
    let mut homs = Vec::with_capacity(n * n);
    let mut cells = Vec::with_capacity(n * n);
    let mut cell_index: Vec<HashMap<(Obj, Obj), Obj>> = Vec::with_capacity(n * n);
    let mut mor_pairs = Vec::with_capacity(n * n);
    let mut mor_index: Vec<HashMap<(Mor, Mor), Mor>> = Vec::with_capacity(n * n);
    for &(x, y) in &objects {
        for &(x2, y2) in &objects {
            let (gf, pf) = (g.hom_functor(x, x2), p.hom_functor(y, y2));
            let (hc, hd) = (&*gf.dom, &*pf.dom);
            let ob: Vec<(Obj, Obj)> = hc
                .objects()
                .flat_map(|u| hd.objects().map(move |v| (u, v)))
                .filter(|&(u, v)| gf.obj_map[u] == pf.obj_map[v])
                .collect();
            let oidx: HashMap<(Obj, Obj), Obj> = ob.iter().enumerate().map(|(i, &k)| (k, i)).collect();
            let mp: Vec<(Mor, Mor)> = hc
                .morphisms()
                .flat_map(|s| hd.morphisms().map(move |t| (s, t)))
                .filter(|&(s, t)| gf.mor_map[s] == pf.mor_map[t])
                .collect();
            let midx: HashMap<(Mor, Mor), Mor> = mp.iter().enumerate().map(|(i, &k)| (k, i)).collect();
            let mors = mp
                .iter()
                .map(|&(s, t)| {
                    let name = format!("({},{})", hc.morphism_name(s), hd.morphism_name(t));
                    (name, oidx[&(hc.src(s), hd.src(t))], oidx[&(hc.dst(s), hd.dst(t))])
                })
                .collect();
            let ids = ob.iter().map(|&(u, v)| midx[&(hc.id(u), hd.id(v))]).collect();
            let onames = ob.iter().map(|&(u, v)| format!("({},{})", hc.object_name(u), hd.object_name(v))).collect();
            let cat = FinCategory::from_parts(onames, mors, ids, |t2, t1| {
                let ((s1, r1), (s2, r2)) = (mp[t1], mp[t2]);
                midx[&(hc.compose(s2, s1), hd.compose(r2, r1))]
            });
            homs.push(Arc::new(cat));
            cells.push(ob);
            cell_index.push(oidx);
            mor_pairs.push(mp);
            mor_index.push(midx);
        }
    }
    let id1 = (0..n)
        .map(|i| {
            let (x, y) = objects[i];
            cell_index[i * n + i][&(cp.id1(x), d.id1(y))]
        })
        .collect();
    let category = Arc::new(FinTwoCategory::from_parts(
        names,
        homs,
        id1,
        |i, j, k, u, w| {
            let ((x, y), (x2, y2), (x3, y3)) = (objects[i], objects[j], objects[k]);
            let ((u1, v1), (u2, v2)) = (cells[i * n + j][u], cells[j * n + k][w]);
            cell_index[i * n + k][&(cp.comp1(x, x2, x3, u1, u2), d.comp1(y, y2, y3, v1, v2))]
        },
        |i, j, k, m, w| {
            let ((x, y), (x2, y2), (x3, y3)) = (objects[i], objects[j], objects[k]);
            let ((s, t), (u2, v2)) = (mor_pairs[i * n + j][m], cells[j * n + k][w]);
            mor_index[i * n + k][&(cp.whisker_right(x, x2, x3, s, u2), d.whisker_right(y, y2, y3, t, v2))]
        },
        |i, j, k, u, m| {
            let ((x, y), (x2, y2), (x3, y3)) = (objects[i], objects[j], objects[k]);
            let ((u1, v1), (s, t)) = (cells[i * n + j][u], mor_pairs[j * n + k][m]);
            mor_index[i * n + k][&(cp.whisker_left(x, x2, x3, u1, s), d.whisker_left(y, y2, y3, v1, t))]
        },
    ));
    let projection = TwoFunctor {
        dom: category.clone(),
        cod: g.dom.clone(),
        obj_map: objects.iter().map(|o| o.0).collect(),
        one_cells: cells.iter().map(|v| v.iter().map(|c| c.0).collect()).collect(),
        two_cells: mor_pairs.iter().map(|v| v.iter().map(|c| c.0).collect()).collect(),
    };
    Pullback { category, projection, objects, one_cells: cells, two_cells: mor_pairs }
}

/// True when the 2-functor is bijective on objects, 1-cells and 2-cells.
pub fn is_strict_isomorphism(f: &TwoFunctor) -> bool {
    let (a, b) = (&*f.dom, &*f.cod);
    if a.num_objects() != b.num_objects() {
        return false;
    }
    let mut seen = vec![false; b.num_objects()];
    for &y in &f.obj_map {
        if std::mem::replace(&mut seen[y], true) {
            return false;
        }
    }
    a.objects().all(|x| a.objects().all(|y| f.hom_functor(x, y).is_isomorphism()))
}

fn position<K: std::hash::Hash + Eq + Copy>(items: &[K]) -> HashMap<K, usize> {
    items.iter().enumerate().map(|(i, &k)| (k, i)).collect()
}

/// The canonical comparison `∫(F ∘ g) → g*(∫F)` sending `(c', X)` to
/// `(c', (g c', X))`. It is validated as a 2-functor; base change holds when
/// it is a strict isomorphism.
pub fn base_change_comparison(f: &CatValuedTwoFunctor, g: &TwoFunctor) -> Result<TwoFunctor, GrothError> {
    let whole = grothendieck(f);
    let restricted = grothendieck(&f.restrict(g));
    let pb = pullback(&whole.projection, g);
    let whole_objects = position(&whole.objects);
    let pb_objects = position(&pb.objects);
    let lift = |&(x, v): &(Obj, Obj)| whole_objects[&(g.obj_map[x], v)];
    let obj_map: Vec<Obj> = restricted.objects.iter().map(|o| pb_objects[&(o.0, lift(o))]).collect();
    let rc = &*restricted.category;
    let wc = &*whole.category;
    let mut one_cells = Vec::new();
    let mut two_cells = Vec::new();
    for i in rc.objects() {
        for j in rc.objects() {
            let h = rc.hom_index(i, j);
            let (x, y) = (restricted.objects[i].0, restricted.objects[j].0);
            let (wi, wj) = (lift(&restricted.objects[i]), lift(&restricted.objects[j]));
            let wh = wc.hom_index(wi, wj);
            let gh = g.dom.hom_index(x, y);
            let ph = pb.category.hom_index(obj_map[i], obj_map[j]);
            let whole_cells = position(&whole.one_cells[wh]);
            let pb_cells = position(&pb.one_cells[ph]);
            let pb_mors = position(&pb.two_cells[ph]);
            let lifted: Vec<Obj> =
                restricted.one_cells[h].iter().map(|&(fc, phi)| whole_cells[&(g.one_cells[gh][fc], phi)]).collect();
            let ones: Vec<Obj> =
                restricted.one_cells[h].iter().zip(&lifted).map(|(&(fc, _), &w)| pb_cells[&(fc, w)]).collect();
            let rhom = rc.hom(i, j);
            let whom = wc.hom(wi, wj);
            let mut twos = Vec::with_capacity(rhom.num_morphisms());
            for m in rhom.morphisms() {
                let s = restricted.two_cells[h][m];
                let gs = g.two_cells[gh][s];
                let (w1, w2) = (lifted[rhom.src(m)], lifted[rhom.dst(m)]);
                let wm = whom
                    .hom(w1, w2)
                    .iter()
                    .copied()
                    .find(|&wm| whole.two_cells[wh][wm] == gs)
                    .ok_or_else(|| GrothError::InvalidFunctor("a restricted 2-cell has no image".into()))?;
                twos.push(pb_mors[&(s, wm)]);
            }
            one_cells.push(ones);
            two_cells.push(twos);
        }
    }
    let comparison = TwoFunctor { dom: restricted.category.clone(), cod: pb.category, obj_map, one_cells, two_cells };
    comparison.validate()?;
    Ok(comparison)
}

/// Aggregate verdict of [`coinitiality_evidence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoinitialityVerdict {
    /// Every comma category has an initial or terminal object.
    Certified,
    /// Some comma categories only have bounded homology evidence.
    Evidence { dim: usize },
    /// The comma category over `object` is not weakly contractible.
    Refuted { object: Obj, degree: usize, group: AbGroup },
}

impl fmt::Display for CoinitialityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoinitialityVerdict::Certified => write!(f, "COINITIAL-CERTIFIED"),
            CoinitialityVerdict::Evidence { dim } => write!(f, "COINITIAL-EVIDENCE({dim})"),
            CoinitialityVerdict::Refuted { object, degree, group } => {
                write!(f, "REFUTED at object {object}: H_{degree} = {group}")
            }
        }
    }
}

/// Per-object contractibility of the comma categories `X ×_Y Y_{/y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoinitialityReport {
    pub per_object: Vec<Contractibility>,
    pub verdict: CoinitialityVerdict,
}

/// Runs [`contractibility`] on the comma category of `f` over every object
/// of its codomain and aggregates the verdicts.
pub fn coinitiality_evidence(f: &FinFunctor, dim: usize) -> Result<CoinitialityReport, GrothError> {
    let mut per_object = Vec::with_capacity(f.cod.num_objects());
    let mut verdict = CoinitialityVerdict::Certified;
    for y in f.cod.objects() {
        let (slice, _) = comma(f, y);
        let c = contractibility(&slice, dim)?;
        match (&c, &verdict) {
            (
                Contractibility::Refuted { degree, group },
                CoinitialityVerdict::Certified | CoinitialityVerdict::Evidence { .. },
            ) => {
                verdict = CoinitialityVerdict::Refuted { object: y, degree: *degree, group: group.clone() };
            }
            (
                Contractibility::Certified(ContractibilityCertificate::BoundedHomologyEvidence { dim }),
                CoinitialityVerdict::Certified,
            ) => {
                verdict = CoinitialityVerdict::Evidence { dim: *dim };
            }
            _ => {}
        }
        per_object.push(c);
    }
    Ok(CoinitialityReport { per_object, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::FinCategory;

    fn pick(cod: &Arc<FinCategory>, v: Obj) -> FinFunctor {
        FinFunctor {
            dom: Arc::new(FinCategory::terminal()),
            cod: cod.clone(),
            obj_map: vec![v],
            mor_map: vec![cod.id(v)],
        }
    }

    /// `F(0) = ∗`, `F(1) = [1]`, the arrow acting by picking object 0.
    fn interval_example() -> CatValuedTwoFunctor {
        let c = FinCategory::ordinal(1);
        let pt = Arc::new(FinCategory::terminal());
        let i = Arc::new(FinCategory::ordinal(1));
        let on = c
            .morphisms()
            .map(|m| match (c.src(m), c.dst(m)) {
                (0, 0) => FinFunctor::identity(pt.clone()),
                (1, 1) => FinFunctor::identity(i.clone()),
                _ => pick(&i, 0),
            })
            .collect();
        CatValuedTwoFunctor::from_functor(&c, vec![pt, i], on)
    }

    /// Two objects with a single 2-cell `f ⇒ g` between parallel 1-cells.
    fn walking_two_cell() -> FinTwoCategory {
        let homs = vec![
            Arc::new(FinCategory::terminal()),
            Arc::new(FinCategory::poset(vec!["f".into(), "g".into()], |a, b| a <= b)),
            Arc::new(FinCategory::empty()),
            Arc::new(FinCategory::terminal()),
        ];
        let cells = homs[1].clone();
        let (c2, c3) = (cells.clone(), cells.clone());
        FinTwoCategory::from_parts(
            vec!["0".into(), "1".into()],
            homs,
            vec![0, 0],
            |_, _, _, f, g| f.max(g),
            move |x, y, _, a, g| if x == y { c2.id(g) } else { a },
            move |_, y, z, f, b| if y == z { c3.id(f) } else { b },
        )
    }

    #[test]
    fn constant_terminal_recovers_base() {
        let base = Arc::new(from_one_category(&FinCategory::ordinal(2)));
        let f = CatValuedTwoFunctor::constant(base, Arc::new(FinCategory::terminal()));
        f.validate().unwrap();
        let g = grothendieck(&f);
        g.category.validate().unwrap();
        g.projection.validate().unwrap();
        assert!(is_strict_isomorphism(&g.projection));
    }

    #[test]
    fn interval_example_cells() {
        let f = interval_example();
        f.validate().unwrap();
        let g = grothendieck(&f);
        g.category.validate().unwrap();
        assert_eq!(g.category.object_names(), &["(0,*)", "(1,0)", "(1,1)"]);
        let d = &*g.category;
        let h = d.hom_index(0, 1);
        let e = g.one_cells[h].iter().position(|&(_, phi)| f.values[1].is_identity(phi)).unwrap();
        assert!(is_cocartesian(&g.projection, 0, 1, e).unwrap());
        let h = d.hom_index(0, 2);
        assert_eq!(g.one_cells[h].len(), 1);
        assert!(!is_cocartesian(&g.projection, 0, 2, 0).unwrap());
        assert!(is_opfibered(&g.projection).is_opfibered());
        let fiber = Arc::new(fiber_over(&g.projection, 1).unwrap());
        assert!(crate::cat::find_isomorphism(&fiber, &f.values[1]).is_some());
    }

    #[test]
    fn nontrivial_two_cells() {
        let base = Arc::new(walking_two_cell());
        base.validate().unwrap();
        let pt = Arc::new(FinCategory::terminal());
        let i = Arc::new(FinCategory::ordinal(1));
        let arrow = i.hom(0, 1)[0];
        let f = CatValuedTwoFunctor {
            base: base.clone(),
            values: vec![pt.clone(), i.clone()],
            on_1cells: vec![
                vec![FinFunctor::identity(pt.clone())],
                vec![pick(&i, 0), pick(&i, 1)],
                vec![],
                vec![FinFunctor::identity(i.clone())],
            ],
            on_2cells: vec![
                vec![vec![0]],
                base.hom(0, 1)
                    .morphisms()
                    .map(|m| match (base.hom(0, 1).src(m), base.hom(0, 1).dst(m)) {
                        (0, 1) => vec![arrow],
                        (v, _) => vec![i.id(v)],
                    })
                    .collect(),
                vec![],
                vec![i.objects().map(|v| i.id(v)).collect()],
            ],
        };
        f.validate().unwrap();
        let g = grothendieck(&f);
        g.category.validate().unwrap();
        g.projection.validate().unwrap();
        assert!(is_opfibered(&g.projection).is_opfibered());
        for a in base.objects() {
            let fiber = Arc::new(fiber_over(&g.projection, a).unwrap());
            assert!(crate::cat::find_isomorphism(&fiber, &f.values[a]).is_some());
        }
        // a broken component is rejected
        let mut bad = f.clone();
        bad.on_2cells[1][bad.base.hom(0, 1).hom(0, 1)[0]] = vec![i.id(0)];
        assert!(bad.validate().is_err());
    }

    #[test]
    fn non_discrete_hom_functor_is_reported() {
        // one object whose 1-cells form the monoid ({0,1}, max) ordered by ≤
        let hom = Arc::new(FinCategory::poset(vec!["a".into(), "b".into()], |a, b| a <= b));
        let h2 = hom.clone();
        let h3 = hom.clone();
        let d = Arc::new(FinTwoCategory::from_parts(
            vec!["*".into()],
            vec![hom.clone()],
            vec![0],
            |_, _, _, f, g| f.max(g),
            move |_, _, _, a, g| h2.hom(h2.src(a).max(g), h2.dst(a).max(g))[0],
            move |_, _, _, f, b| h3.hom(f.max(h3.src(b)), f.max(h3.dst(b)))[0],
        ));
        d.validate().unwrap();
        let t = Arc::new(FinTwoCategory::terminal());
        let p = TwoFunctor {
            dom: d,
            cod: t,
            obj_map: vec![0],
            one_cells: vec![vec![0, 0]],
            two_cells: vec![vec![0, 0, 0]],
        };
        p.validate().unwrap();
        let report = is_opfibered(&p);
        assert_eq!(report.failures, vec![OpfibrationFailure::NotDiscreteFibration { source: 0, target: 0 }]);
        assert!(matches!(is_cocartesian(&p, 0, 0, 0), Err(GrothError::NotFiberedInSets { .. })));
        assert!(is_opfibered(&TwoFunctor::identity(Arc::new(walking_two_cell()))).is_opfibered());
    }

    #[test]
    fn base_change_along_identity_and_inclusion() {
        let f = interval_example();
        let id = TwoFunctor::identity(f.base.clone());
        assert!(is_strict_isomorphism(&base_change_comparison(&f, &id).unwrap()));
        let t = Arc::new(FinTwoCategory::terminal());
        let incl = TwoFunctor {
            dom: t,
            cod: f.base.clone(),
            obj_map: vec![1],
            one_cells: vec![vec![0]],
            two_cells: vec![vec![0]],
        };
        incl.validate().unwrap();
        assert!(is_strict_isomorphism(&base_change_comparison(&f, &incl).unwrap()));
    }

    #[test]
    fn coinitiality_examples() {
        let i = Arc::new(FinCategory::ordinal(1));
        let id = FinFunctor::identity(i.clone());
        assert_eq!(coinitiality_evidence(&id, 3).unwrap().verdict, CoinitialityVerdict::Certified);
        let zero = pick(&i, 0);
        assert_eq!(coinitiality_evidence(&zero, 3).unwrap().verdict, CoinitialityVerdict::Certified);
        let one = pick(&i, 1);
        assert_eq!(
            coinitiality_evidence(&one, 3).unwrap().verdict,
            CoinitialityVerdict::Refuted { object: 0, degree: 0, group: AbGroup::zero() }
        );
    }
}
