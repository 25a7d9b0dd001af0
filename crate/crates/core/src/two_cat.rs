//! Finite strict 2-categories, strict 2-functors and their enumeration, the
//! orientals, and the hom-wise twisted arrow construction.
//!
//! A 2-category stores one [`FinCategory`] per ordered pair of objects. The
//! objects of `hom(x, y)` are the 1-cells `x → y` and its morphisms are the
//! 2-cells. Horizontal composition is written in diagrammatic order:
//! `comp1(f, g)` is "first `f`, then `g`". It is stored through the composite
//! of 1-cells and the two whiskerings
//!
//! * `whisker_right(α, g) = α * id_g`,
//! * `whisker_left(f, β) = id_f * β`,
//!
//! from which the full horizontal composite of 2-cells is recovered as
//! `α * β = (α * id_g') ∘ (id_f * β)` for `α: f ⇒ f'`, `β: g ⇒ g'`.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cat::{
    opposite, product, twisted_arrow_data, validate_category, CatError, FinCategory, FinFunctor, Mor, Obj, RawCategory,
    TwistedArrow,
};

/// Largest oriental built unless the caller raises the bound.
pub const DEFAULT_ORIENTAL_BOUND: usize = 6;
/// Default node ceiling for 2-functor enumeration.
pub const DEFAULT_CEILING: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoCatError {
    #[error("duplicate object identifier `{0}`")]
    DuplicateObject(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("hom category {x} → {y} is invalid: {source}")]
    Hom { x: String, y: String, source: CatError },
    #[error("hom category {x} → {y} is listed twice")]
    DuplicateHom { x: String, y: String },
    #[error("object `{0}` has no identity 1-cell")]
    MissingIdentity(String),
    #[error("unknown {what} `{name}`")]
    UnknownCell { what: &'static str, name: String },
    #[error("no horizontal composite for 2-cells ({alpha}, {beta}) over {x} → {y} → {z}")]
    MissingComposite { x: String, y: String, z: String, alpha: String, beta: String },
    #[error("horizontal composition is not unital at 1-cell `{cell}`")]
    BadUnit { cell: String },
    #[error("horizontal composition is not associative on ({f}, {g}, {h})")]
    NonAssociative { f: String, g: String, h: String },
    #[error("horizontal composite involving `{cell}` has the wrong source or target")]
    IllTyped { cell: String },
    #[error("horizontal composition is not functorial at `{cell}`")]
    NotFunctorial { cell: String },
    #[error("interchange fails for 2-cells α={alpha}, α'={alpha2}, β={beta}, β'={beta2}")]
    InterchangeFailure { alpha: String, alpha2: String, beta: String, beta2: String },
    #[error("requested size {requested} exceeds the configured bound {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("enumeration exceeded the node ceiling {ceiling} (visited {nodes} nodes)")]
    ExplosionGuard { ceiling: u64, nodes: u64 },
    #[error("2-functor is invalid: {0}")]
    BadTwoFunctor(String),
}

/// The composition data for one triple of objects `(x, y, z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Composition {
    /// `comp1[f * |obj(y,z)| + g] = f;g`.
    comp1: Vec<Obj>,
    /// `wr[α * |obj(y,z)| + g] = α * id_g`.
    wr: Vec<Mor>,
    /// `wl[f * |mor(y,z)| + β] = id_f * β`.
    wl: Vec<Mor>,
}

/// A finite strict 2-category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinTwoCategory {
    obj_names: Vec<String>,
    homs: Vec<Arc<FinCategory>>,
    id1: Vec<Obj>,
    triples: Vec<Composition>,
}

impl FinTwoCategory {
    /// Assembles a 2-category from closures without checking the axioms.
    ///
    /// `homs` is indexed by `x * n + y`. The closures receive the object
    /// triple `(x, y, z)` followed by cell indices and must return indices
    /// in `hom(x, z)`.
    pub fn from_parts<C, R, L>(
        obj_names: Vec<String>,
        homs: Vec<Arc<FinCategory>>,
        id1: Vec<Obj>,
        mut comp1: C,
        mut whisker_right: R,
        mut whisker_left: L,
    ) -> FinTwoCategory
    where
        C: FnMut(Obj, Obj, Obj, Obj, Obj) -> Obj,
        R: FnMut(Obj, Obj, Obj, Mor, Obj) -> Mor,
        L: FnMut(Obj, Obj, Obj, Obj, Mor) -> Mor,
    {
        let n = obj_names.len();
        assert_eq!(homs.len(), n * n, "one hom category per ordered pair");
        assert_eq!(id1.len(), n, "one identity 1-cell per object");
        let mut triples = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz) = (&homs[x * n + y], &homs[y * n + z]);
                    let mut comp = Composition {
                        comp1: Vec::with_capacity(hxy.num_objects() * hyz.num_objects()),
                        wr: Vec::with_capacity(hxy.num_morphisms() * hyz.num_objects()),
                        wl: Vec::with_capacity(hxy.num_objects() * hyz.num_morphisms()),
                    };
                    for f in hxy.objects() {
                        for g in hyz.objects() {
                            comp.comp1.push(comp1(x, y, z, f, g));
                        }
                    }
                    for a in hxy.morphisms() {
                        for g in hyz.objects() {
                            comp.wr.push(whisker_right(x, y, z, a, g));
                        }
                    }
                    for f in hxy.objects() {
                        for b in hyz.morphisms() {
                            comp.wl.push(whisker_left(x, y, z, f, b));
                        }
                    }
                    triples.push(comp);
                }
            }
        }
        FinTwoCategory { obj_names, homs, id1, triples }
    }

    /// The terminal 2-category.
    pub fn terminal() -> FinTwoCategory {
        from_one_category(&FinCategory::terminal())
    }

    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.obj_names.len()
    }

    pub fn object_name(&self, x: Obj) -> &str {
        &self.obj_names[x]
    }

    pub fn object_names(&self) -> &[String] {
        &self.obj_names
    }

    pub fn object_by_name(&self, name: &str) -> Option<Obj> {
        self.obj_names.iter().position(|s| s == name)
    }

    /// Index of the hom category `x → y`.
    pub fn hom_index(&self, x: Obj, y: Obj) -> usize {
        x * self.obj_names.len() + y
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &FinCategory {
        &self.homs[self.hom_index(x, y)]
    }

    pub fn hom_arc(&self, x: Obj, y: Obj) -> &Arc<FinCategory> {
        &self.homs[self.hom_index(x, y)]
    }

    /// The identity 1-cell of `x`, an object of `hom(x, x)`.
    pub fn id1(&self, x: Obj) -> Obj {
        self.id1[x]
    }

    fn triple(&self, x: Obj, y: Obj, z: Obj) -> &Composition {
        let n = self.obj_names.len();
        &self.triples[(x * n + y) * n + z]
    }

    /// `f;g` for `f: x → y`, `g: y → z`.
    pub fn comp1(&self, x: Obj, y: Obj, z: Obj, f: Obj, g: Obj) -> Obj {
        let nz = self.hom(y, z).num_objects();
        self.triple(x, y, z).comp1[f * nz + g]
    }

    /// `α * id_g` for `α` in `hom(x, y)` and `g` in `hom(y, z)`.
    pub fn whisker_right(&self, x: Obj, y: Obj, z: Obj, alpha: Mor, g: Obj) -> Mor {
        let nz = self.hom(y, z).num_objects();
        self.triple(x, y, z).wr[alpha * nz + g]
    }

    /// `id_f * β` for `f` in `hom(x, y)` and `β` in `hom(y, z)`.
    pub fn whisker_left(&self, x: Obj, y: Obj, z: Obj, f: Obj, beta: Mor) -> Mor {
        let nz = self.hom(y, z).num_morphisms();
        self.triple(x, y, z).wl[f * nz + beta]
    }

    /// The horizontal composite `α * β`.
    pub fn hcomp2(&self, x: Obj, y: Obj, z: Obj, alpha: Mor, beta: Mor) -> Mor {
        let hyz = self.hom(y, z);
        let f = self.hom(x, y).src(alpha);
        let first = self.whisker_left(x, y, z, f, beta);
        let second = self.whisker_right(x, y, z, alpha, hyz.dst(beta));
        self.hom(x, z).compose(second, first)
    }

    /// Total number of 1-cells.
    pub fn num_one_cells(&self) -> usize {
        self.homs.iter().map(|h| h.num_objects()).sum()
    }

    /// Total number of 2-cells.
    pub fn num_two_cells(&self) -> usize {
        self.homs.iter().map(|h| h.num_morphisms()).sum()
    }

    /// True when every hom category is discrete.
    pub fn is_locally_discrete(&self) -> bool {
        self.homs.iter().all(|h| h.is_discrete())
    }

    fn cell_name(&self, x: Obj, y: Obj, a: Mor) -> String {
        format!("{}→{}:{}", self.obj_names[x], self.obj_names[y], self.hom(x, y).morphism_name(a))
    }

    fn one_cell_name(&self, x: Obj, y: Obj, f: Obj) -> String {
        format!("{}→{}:{}", self.obj_names[x], self.obj_names[y], self.hom(x, y).object_name(f))
    }

    /// Exhaustively checks the axioms of a strict 2-category: valid hom
    /// categories, associativity and unitality of 1-cell composition,
    /// functoriality, unitality and associativity of the whiskerings, and the
    /// interchange law.
    pub fn validate(&self) -> Result<(), TwoCatError> {
        let n = self.num_objects();
        for x in 0..n {
            for y in 0..n {
                self.hom(x, y).validate().map_err(|source| TwoCatError::Hom {
                    x: self.obj_names[x].clone(),
                    y: self.obj_names[y].clone(),
                    source,
                })?;
            }
            if self.id1[x] >= self.hom(x, x).num_objects() {
                return Err(TwoCatError::MissingIdentity(self.obj_names[x].clone()));
            }
        }
        // unit laws
        for x in 0..n {
            for y in 0..n {
                let hxy = self.hom(x, y);
                for f in hxy.objects() {
                    if self.comp1(x, x, y, self.id1[x], f) != f || self.comp1(x, y, y, f, self.id1[y]) != f {
                        return Err(TwoCatError::BadUnit { cell: self.one_cell_name(x, y, f) });
                    }
                }
                for a in hxy.morphisms() {
                    if self.whisker_right(x, y, y, a, self.id1[y]) != a
                        || self.whisker_left(x, x, y, self.id1[x], a) != a
                    {
                        return Err(TwoCatError::BadUnit { cell: self.cell_name(x, y, a) });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    self.validate_triple(x, y, z)?;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        self.validate_quadruple(x, y, z, w)?;
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_triple(&self, x: Obj, y: Obj, z: Obj) -> Result<(), TwoCatError> {
        let (hxy, hyz, hxz) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
        for f in hxy.objects() {
            for g in hyz.objects() {
                if self.comp1(x, y, z, f, g) >= hxz.num_objects() {
                    return Err(TwoCatError::IllTyped { cell: self.one_cell_name(x, y, f) });
                }
            }
        }
        // typing and functoriality of whisker_right
        for g in hyz.objects() {
            for a in hxy.morphisms() {
                let r = self.whisker_right(x, y, z, a, g);
                if r >= hxz.num_morphisms()
                    || hxz.src(r) != self.comp1(x, y, z, hxy.src(a), g)
                    || hxz.dst(r) != self.comp1(x, y, z, hxy.dst(a), g)
                {
                    return Err(TwoCatError::IllTyped { cell: self.cell_name(x, y, a) });
                }
            }
            for f in hxy.objects() {
                if self.whisker_right(x, y, z, hxy.id(f), g) != hxz.id(self.comp1(x, y, z, f, g)) {
                    return Err(TwoCatError::NotFunctorial { cell: self.one_cell_name(y, z, g) });
                }
            }
            for b in hxy.morphisms() {
                for &a in hxy.incoming(hxy.src(b)) {
                    let lhs = self.whisker_right(x, y, z, hxy.compose(b, a), g);
                    let rhs = hxz.compose(self.whisker_right(x, y, z, b, g), self.whisker_right(x, y, z, a, g));
                    if lhs != rhs {
                        return Err(TwoCatError::NotFunctorial { cell: self.cell_name(x, y, b) });
                    }
                }
            }
        }
        // typing and functoriality of whisker_left
        for f in hxy.objects() {
            for b in hyz.morphisms() {
                let r = self.whisker_left(x, y, z, f, b);
                if r >= hxz.num_morphisms()
                    || hxz.src(r) != self.comp1(x, y, z, f, hyz.src(b))
                    || hxz.dst(r) != self.comp1(x, y, z, f, hyz.dst(b))
                {
                    return Err(TwoCatError::IllTyped { cell: self.cell_name(y, z, b) });
                }
            }
            for g in hyz.objects() {
                if self.whisker_left(x, y, z, f, hyz.id(g)) != hxz.id(self.comp1(x, y, z, f, g)) {
                    return Err(TwoCatError::NotFunctorial { cell: self.one_cell_name(x, y, f) });
                }
            }
            for d in hyz.morphisms() {
                for &c in hyz.incoming(hyz.src(d)) {
                    let lhs = self.whisker_left(x, y, z, f, hyz.compose(d, c));
                    let rhs = hxz.compose(self.whisker_left(x, y, z, f, d), self.whisker_left(x, y, z, f, c));
                    if lhs != rhs {
                        return Err(TwoCatError::NotFunctorial { cell: self.cell_name(y, z, d) });
                    }
                }
            }
        }
        // interchange: (α * id_g') ∘ (id_f * β) = (id_f' * β) ∘ (α * id_g)
        for a in hxy.morphisms() {
            let (f, f2) = (hxy.src(a), hxy.dst(a));
            for b in hyz.morphisms() {
                let (g, g2) = (hyz.src(b), hyz.dst(b));
                let lhs = hxz.compose(self.whisker_right(x, y, z, a, g2), self.whisker_left(x, y, z, f, b));
                let rhs = hxz.compose(self.whisker_left(x, y, z, f2, b), self.whisker_right(x, y, z, a, g));
                if lhs != rhs {
                    return Err(TwoCatError::InterchangeFailure {
                        alpha: self.cell_name(x, y, a),
                        alpha2: self.cell_name(x, y, hxy.id(f2)),
                        beta: self.cell_name(y, z, hyz.id(g)),
                        beta2: self.cell_name(y, z, b),
                    });
                }
            }
        }
        Ok(())
    }

    fn validate_quadruple(&self, x: Obj, y: Obj, z: Obj, w: Obj) -> Result<(), TwoCatError> {
        let (hxy, hyz, hzw) = (self.hom(x, y), self.hom(y, z), self.hom(z, w));
        for f in hxy.objects() {
            for g in hyz.objects() {
                let fg = self.comp1(x, y, z, f, g);
                for h in hzw.objects() {
                    let gh = self.comp1(y, z, w, g, h);
                    if self.comp1(x, z, w, fg, h) != self.comp1(x, y, w, f, gh) {
                        return Err(TwoCatError::NonAssociative {
                            f: self.one_cell_name(x, y, f),
                            g: self.one_cell_name(y, z, g),
                            h: self.one_cell_name(z, w, h),
                        });
                    }
                }
            }
        }
        // (α * g) * h = α * (g;h)
        for a in hxy.morphisms() {
            for g in hyz.objects() {
                let ag = self.whisker_right(x, y, z, a, g);
                for h in hzw.objects() {
                    let gh = self.comp1(y, z, w, g, h);
                    if self.whisker_right(x, z, w, ag, h) != self.whisker_right(x, y, w, a, gh) {
                        return Err(TwoCatError::NonAssociative {
                            f: self.cell_name(x, y, a),
                            g: self.one_cell_name(y, z, g),
                            h: self.one_cell_name(z, w, h),
                        });
                    }
                }
            }
        }
        // f * (g * γ) = (f;g) * γ
        for f in hxy.objects() {
            for g in hyz.objects() {
                let fg = self.comp1(x, y, z, f, g);
                for c in hzw.morphisms() {
                    let gc = self.whisker_left(y, z, w, g, c);
                    if self.whisker_left(x, y, w, f, gc) != self.whisker_left(x, z, w, fg, c) {
                        return Err(TwoCatError::NonAssociative {
                            f: self.one_cell_name(x, y, f),
                            g: self.one_cell_name(y, z, g),
                            h: self.cell_name(z, w, c),
                        });
                    }
                }
            }
        }
        // f * (β * h) = (f * β) * h
        for f in hxy.objects() {
            for b in hyz.morphisms() {
                let fb = self.whisker_left(x, y, z, f, b);
                for h in hzw.objects() {
                    let bh = self.whisker_right(y, z, w, b, h);
                    if self.whisker_left(x, y, w, f, bh) != self.whisker_right(x, z, w, fb, h) {
                        return Err(TwoCatError::NonAssociative {
                            f: self.one_cell_name(x, y, f),
                            g: self.cell_name(y, z, b),
                            h: self.one_cell_name(z, w, h),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Exports the 2-category with full horizontal composition tables on 2-cells.
    pub fn to_raw(&self) -> RawTwoCategory {
        let n = self.num_objects();
        let mut homs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                homs.push((self.obj_names[x].clone(), self.obj_names[y].clone(), self.hom(x, y).to_raw()));
            }
        }
        let mut hcomp = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz, hxz) = (self.hom(x, y), self.hom(y, z), self.hom(x, z));
                    let mut table = Vec::with_capacity(hxy.num_morphisms() * hyz.num_morphisms());
                    for a in hxy.morphisms() {
                        for b in hyz.morphisms() {
                            table.push((
                                hxy.morphism_name(a).to_string(),
                                hyz.morphism_name(b).to_string(),
                                hxz.morphism_name(self.hcomp2(x, y, z, a, b)).to_string(),
                            ));
                        }
                    }
                    hcomp.push((
                        self.obj_names[x].clone(),
                        self.obj_names[y].clone(),
                        self.obj_names[z].clone(),
                        table,
                    ));
                }
            }
        }
        RawTwoCategory {
            objects: self.obj_names.clone(),
            homs,
            id1: (0..n)
                .map(|x| (self.obj_names[x].clone(), self.hom(x, x).object_name(self.id1[x]).to_string()))
                .collect(),
            hcomp,
        }
    }
}

/// Plain-data description of a finite 2-category.
///
/// `homs` lists `(x, y, hom(x, y))`; pairs that are absent have an empty
/// hom category. `hcomp` lists, per triple `(x, y, z)`, rows `(α, β, α * β)`
/// naming 2-cells; the composite of 1-cells is read off from identity 2-cells.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawTwoCategory {
    pub objects: Vec<String>,
    pub homs: Vec<(String, String, RawCategory)>,
    pub id1: Vec<(String, String)>,
    pub hcomp: Vec<(String, String, String, Vec<(String, String, String)>)>,
}

/// Builds a 2-category from raw tables, checking that the horizontal
/// composition table is a functor `hom(x,y) × hom(y,z) → hom(x,z)` (which
/// encodes interchange) and then all remaining axioms.
pub fn validate_two_category(raw: &RawTwoCategory) -> Result<FinTwoCategory, TwoCatError> {
    let n = raw.objects.len();
    let mut index = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if index.insert(o.as_str(), i).is_some() {
            return Err(TwoCatError::DuplicateObject(o.clone()));
        }
    }
    let obj = |s: &str| index.get(s).copied().ok_or_else(|| TwoCatError::UnknownObject(s.to_string()));
    let mut homs: Vec<Option<Arc<FinCategory>>> = vec![None; n * n];
    for (x, y, rc) in &raw.homs {
        let (xi, yi) = (obj(x)?, obj(y)?);
        let c = validate_category(rc).map_err(|source| TwoCatError::Hom { x: x.clone(), y: y.clone(), source })?;
        if homs[xi * n + yi].replace(Arc::new(c)).is_some() {
            return Err(TwoCatError::DuplicateHom { x: x.clone(), y: y.clone() });
        }
    }
    let homs: Vec<Arc<FinCategory>> =
        homs.into_iter().map(|h| h.unwrap_or_else(|| Arc::new(FinCategory::empty()))).collect();
    let mut id1 = vec![None; n];
    for (x, f) in &raw.id1 {
        let xi = obj(x)?;
        let fi = homs[xi * n + xi]
            .object_by_name(f)
            .ok_or_else(|| TwoCatError::UnknownCell { what: "1-cell", name: f.clone() })?;
        id1[xi] = Some(fi);
    }
    let id1: Vec<Obj> = id1
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| TwoCatError::MissingIdentity(raw.objects[x].clone())))
        .collect::<Result<_, _>>()?;
    // full tables, indexed per triple by α * |mor(y,z)| + β
    let mut tables: Vec<Vec<Option<Mor>>> = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                tables.push(vec![None; homs[x * n + y].num_morphisms() * homs[y * n + z].num_morphisms()]);
            }
        }
    }
    for (x, y, z, rows) in &raw.hcomp {
        let (xi, yi, zi) = (obj(x)?, obj(y)?, obj(z)?);
        let (hxy, hyz, hxz) = (&homs[xi * n + yi], &homs[yi * n + zi], &homs[xi * n + zi]);
        let t = &mut tables[(xi * n + yi) * n + zi];
        let cell = |h: &FinCategory, s: &str| {
            h.morphism_by_name(s).ok_or_else(|| TwoCatError::UnknownCell { what: "2-cell", name: s.to_string() })
        };
        for (a, b, ab) in rows {
            let (ai, bi, abi) = (cell(hxy, a)?, cell(hyz, b)?, cell(hxz, ab)?);
            t[ai * hyz.num_morphisms() + bi] = Some(abi);
        }
    }
    let mut full: Vec<Vec<Mor>> = Vec::with_capacity(tables.len());
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz) = (&homs[x * n + y], &homs[y * n + z]);
                let t = &tables[(x * n + y) * n + z];
                let mut row = Vec::with_capacity(t.len());
                for a in hxy.morphisms() {
                    for b in hyz.morphisms() {
                        match t[a * hyz.num_morphisms() + b] {
                            Some(v) => row.push(v),
                            None => {
                                return Err(TwoCatError::MissingComposite {
                                    x: raw.objects[x].clone(),
                                    y: raw.objects[y].clone(),
                                    z: raw.objects[z].clone(),
                                    alpha: hxy.morphism_name(a).to_string(),
                                    beta: hyz.morphism_name(b).to_string(),
                                })
                            }
                        }
                    }
                }
                full.push(row);
            }
        }
    }
    // functoriality of each table
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (hxy, hyz, hxz) = (&homs[x * n + y], &homs[y * n + z], &homs[x * n + z]);
                let t = &full[(x * n + y) * n + z];
                let nb = hyz.num_morphisms();
                let h = |a: Mor, b: Mor| t[a * nb + b];
                let name = |hc: &FinCategory, a: Mor, p: Obj, q: Obj| {
                    format!("{}→{}:{}", raw.objects[p], raw.objects[q], hc.morphism_name(a))
                };
                for f in hxy.objects() {
                    for g in hyz.objects() {
                        if !hxz.is_identity(h(hxy.id(f), hyz.id(g))) {
                            return Err(TwoCatError::NotFunctorial { cell: name(hxy, hxy.id(f), x, y) });
                        }
                    }
                }
                for a in hxy.morphisms() {
                    for b in hyz.morphisms() {
                        let ab = h(a, b);
                        if hxz.src(ab) != hxz.src(h(hxy.id(hxy.src(a)), hyz.id(hyz.src(b))))
                            || hxz.dst(ab) != hxz.src(h(hxy.id(hxy.dst(a)), hyz.id(hyz.dst(b))))
                        {
                            return Err(TwoCatError::IllTyped { cell: name(hxy, a, x, y) });
                        }
                    }
                }
                for a2 in hxy.morphisms() {
                    for &a in hxy.incoming(hxy.src(a2)) {
                        for b2 in hyz.morphisms() {
                            for &b in hyz.incoming(hyz.src(b2)) {
                                let lhs = h(hxy.compose(a2, a), hyz.compose(b2, b));
                                let rhs = hxz.compose(h(a2, b2), h(a, b));
                                if lhs != rhs {
                                    return Err(TwoCatError::InterchangeFailure {
                                        alpha: name(hxy, a, x, y),
                                        alpha2: name(hxy, a2, x, y),
                                        beta: name(hyz, b, y, z),
                                        beta2: name(hyz, b2, y, z),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let homs2 = homs.clone();
    let full_ref = &full;
    let lookup = move |x: Obj, y: Obj, z: Obj, a: Mor, b: Mor| {
        let nb = homs2[y * n + z].num_morphisms();
        full_ref[(x * n + y) * n + z][a * nb + b]
    };
    let c = FinTwoCategory::from_parts(
        raw.objects.clone(),
        homs.clone(),
        id1,
        |x, y, z, f, g| {
            let m = lookup(x, y, z, homs[x * n + y].id(f), homs[y * n + z].id(g));
            homs[x * n + z].src(m)
        },
        |x, y, z, a, g| lookup(x, y, z, a, homs[y * n + z].id(g)),
        |x, y, z, f, b| lookup(x, y, z, homs[x * n + y].id(f), b),
    );
    c.validate()?;
    Ok(c)
}

/// Views a 1-category as a 2-category with only identity 2-cells.
///
/// The 1-cells of `hom(x, y)` are the morphisms `x → y` in declaration order
/// and keep their identifiers.
pub fn from_one_category(c: &FinCategory) -> FinTwoCategory {
    let n = c.num_objects();
    let mut pos = vec![0; c.num_morphisms()];
    let mut homs = Vec::with_capacity(n * n);
    for x in c.objects() {
        for y in c.objects() {
            let hs = c.hom(x, y);
            for (i, &f) in hs.iter().enumerate() {
                pos[f] = i;
            }
            homs.push(Arc::new(FinCategory::discrete(hs.iter().map(|&f| c.morphism_name(f).to_string()).collect())));
        }
    }
    let id1 = c.objects().map(|x| pos[c.id(x)]).collect();
    let comp = |x: Obj, y: Obj, z: Obj, f: Obj, g: Obj| pos[c.compose(c.hom(y, z)[g], c.hom(x, y)[f])];
    FinTwoCategory::from_parts(c.object_names().to_vec(), homs, id1, comp, comp, comp)
}

/// The oriental `Δ̄ⁿ`: objects `0..=n`, `hom(i, j)` the poset of subsets of
/// `{i, ..., j}` containing `i` and `j` under inclusion, composition by union.
pub fn oriental(n: usize, bound: usize) -> Result<FinTwoCategory, TwoCatError> {
    if n > bound {
        return Err(TwoCatError::BoundExceeded { requested: n, bound });
    }
    let size = n + 1;
    // subsets are bitmasks; per hom, the list of masks in increasing order of
    // their interior bits
    let mut masks: Vec<Vec<u32>> = Vec::with_capacity(size * size);
    let mut homs = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            let list: Vec<u32> = if i > j {
                Vec::new()
            } else if i == j {
                vec![1 << i]
            } else {
                let inner = j - i - 1;
                (0u32..(1 << inner)).map(|bits| (1 << i) | (1 << j) | (bits << (i + 1))).collect()
            };
            let names: Vec<String> = list.iter().map(|&m| subset_name(m)).collect();
            let l2 = list.clone();
            homs.push(Arc::new(FinCategory::poset(names, move |a, b| l2[a] & !l2[b] == 0)));
            masks.push(list);
        }
    }
    let position = |i: usize, j: usize, m: u32| masks[i * size + j].iter().position(|&v| v == m).expect("subset");
    let id1 = (0..size).map(|_| 0).collect();
    let comp1 =
        |x: Obj, y: Obj, z: Obj, f: Obj, g: Obj| position(x, z, masks[x * size + y][f] | masks[y * size + z][g]);
    let wr = |x: Obj, y: Obj, z: Obj, a: Mor, g: Obj| {
        let h = &homs[x * size + y];
        let gm = masks[y * size + z][g];
        let s = position(x, z, masks[x * size + y][h.src(a)] | gm);
        let t = position(x, z, masks[x * size + y][h.dst(a)] | gm);
        homs[x * size + z].hom(s, t)[0]
    };
    let wl = |x: Obj, y: Obj, z: Obj, f: Obj, b: Mor| {
        let h = &homs[y * size + z];
        let fm = masks[x * size + y][f];
        let s = position(x, z, fm | masks[y * size + z][h.src(b)]);
        let t = position(x, z, fm | masks[y * size + z][h.dst(b)]);
        homs[x * size + z].hom(s, t)[0]
    };
    Ok(FinTwoCategory::from_parts((0..size).map(|i| i.to_string()).collect(), homs.clone(), id1, comp1, wr, wl))
}

fn subset_name(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|b| mask & (1 << b) != 0).map(|b| b.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Subset of `{0..}` encoded by an oriental 1-cell, as a bitmask.
pub fn oriental_mask(c: &FinTwoCategory, x: Obj, y: Obj, f: Obj) -> u32 {
    let name = c.hom(x, y).object_name(f);
    name.trim_matches(|ch| ch == '{' || ch == '}')
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| 1u32 << s.parse::<u32>().expect("oriental 1-cell name"))
        .fold(0, |a, b| a | b)
}

/// The 2-functor `Δ̄ᵃ → Δ̄ᵇ` induced by a monotone map `phi: [a] → [b]`,
/// acting on subsets by direct image.
pub fn oriental_map(phi: &[usize], src: &Arc<FinTwoCategory>, dst: &Arc<FinTwoCategory>) -> TwoFunctor {
    let image = |m: u32| -> u32 { (0..32).filter(|b| m & (1 << b) != 0).map(|b| 1u32 << phi[b]).fold(0, |a, b| a | b) };
    let mut one_cells = Vec::new();
    let mut two_cells = Vec::new();
    for x in src.objects() {
        for y in src.objects() {
            let h = src.hom(x, y);
            let (px, py) = (phi[x], phi[y]);
            let target = dst.hom(px, py);
            let find = |m: u32| target.objects().find(|&t| oriental_mask(dst, px, py, t) == m).expect("image subset");
            let ones: Vec<Obj> = h.objects().map(|f| find(image(oriental_mask(src, x, y, f)))).collect();
            let twos: Vec<Mor> = h.morphisms().map(|a| target.hom(ones[h.src(a)], ones[h.dst(a)])[0]).collect();
            one_cells.push(ones);
            two_cells.push(twos);
        }
    }
    TwoFunctor { dom: src.clone(), cod: dst.clone(), obj_map: phi.to_vec(), one_cells, two_cells }
}

/// Reverses the direction of 1-cells (2-cells keep their direction).
pub fn op1(c: &FinTwoCategory) -> FinTwoCategory {
    let n = c.num_objects();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            homs.push(c.hom_arc(y, x).clone());
        }
    }
    FinTwoCategory::from_parts(
        c.obj_names.clone(),
        homs,
        c.id1.clone(),
        |x, y, z, f, g| c.comp1(z, y, x, g, f),
        |x, y, z, a, g| c.whisker_left(z, y, x, g, a),
        |x, y, z, f, b| c.whisker_right(z, y, x, b, f),
    )
}

/// Product of 2-categories; objects, 1-cells and 2-cells are pairs with
/// identifiers `(a,b)`. Object `(x, x')` has index `x * |obj(d)| + x'`.
pub fn product2(c: &FinTwoCategory, d: &FinTwoCategory) -> FinTwoCategory {
    let (nc, nd) = (c.num_objects(), d.num_objects());
    let n = nc * nd;
    let split = |p: Obj| (p / nd, p % nd);
    let mut homs = Vec::with_capacity(n * n);
    for p in 0..n {
        for q in 0..n {
            let ((x, xd), (y, yd)) = (split(p), split(q));
            homs.push(Arc::new(product(c.hom(x, y), d.hom(xd, yd))));
        }
    }
    let names = (0..n).map(|p| format!("({},{})", c.object_name(p / nd), d.object_name(p % nd))).collect();
    let id1 = (0..n).map(|p| c.id1(p / nd) * d.hom(p % nd, p % nd).num_objects() + d.id1(p % nd)).collect();
    FinTwoCategory::from_parts(
        names,
        homs,
        id1,
        |p, q, r, f, g| {
            let ((x, xd), (y, yd), (z, zd)) = (split(p), split(q), split(r));
            let (k1, k2) = (d.hom(xd, yd).num_objects(), d.hom(yd, zd).num_objects());
            let kz = d.hom(xd, zd).num_objects();
            c.comp1(x, y, z, f / k1, g / k2) * kz + d.comp1(xd, yd, zd, f % k1, g % k2)
        },
        |p, q, r, a, g| {
            let ((x, xd), (y, yd), (z, zd)) = (split(p), split(q), split(r));
            let (m1, k2) = (d.hom(xd, yd).num_morphisms(), d.hom(yd, zd).num_objects());
            let mz = d.hom(xd, zd).num_morphisms();
            c.whisker_right(x, y, z, a / m1, g / k2) * mz + d.whisker_right(xd, yd, zd, a % m1, g % k2)
        },
        |p, q, r, f, b| {
            let ((x, xd), (y, yd), (z, zd)) = (split(p), split(q), split(r));
            let (k1, m2) = (d.hom(xd, yd).num_objects(), d.hom(yd, zd).num_morphisms());
            let mz = d.hom(xd, zd).num_morphisms();
            c.whisker_left(x, y, z, f / k1, b / m2) * mz + d.whisker_left(xd, yd, zd, f % k1, b % m2)
        },
    )
}

/// The underlying 1-category of a locally discrete 2-category.
pub fn underlying_one_category(c: &FinTwoCategory) -> Option<FinCategory> {
    if !c.is_locally_discrete() {
        return None;
    }
    let n = c.num_objects();
    let mut mors = Vec::new();
    let mut base = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            base[x * n + y] = mors.len();
            for f in c.hom(x, y).objects() {
                mors.push((c.hom(x, y).object_name(f).to_string(), x, y));
            }
        }
    }
    let locate = |m: Mor| {
        let h = base.partition_point(|&b| b <= m) - 1;
        (h / n, h % n, m - base[h])
    };
    let ids = (0..n).map(|x| base[x * n + x] + c.id1(x)).collect();
    Some(FinCategory::from_parts(c.obj_names.clone(), mors, ids, |g, f| {
        let (x, y, fi) = locate(f);
        let (_, z, gi) = locate(g);
        base[x * n + z] + c.comp1(x, y, z, fi, gi)
    }))
}

/// A strict 2-functor. `one_cells[h]` and `two_cells[h]` map the 1- and
/// 2-cells of the domain hom category with index `h = x * n + y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFunctor {
    pub dom: Arc<FinTwoCategory>,
    pub cod: Arc<FinTwoCategory>,
    pub obj_map: Vec<Obj>,
    pub one_cells: Vec<Vec<Obj>>,
    pub two_cells: Vec<Vec<Mor>>,
}

impl TwoFunctor {
    pub fn identity(c: Arc<FinTwoCategory>) -> TwoFunctor {
        let mut one_cells = Vec::new();
        let mut two_cells = Vec::new();
        for x in c.objects() {
            for y in c.objects() {
                one_cells.push(c.hom(x, y).objects().collect());
                two_cells.push(c.hom(x, y).morphisms().collect());
            }
        }
        TwoFunctor { obj_map: c.objects().collect(), one_cells, two_cells, dom: c.clone(), cod: c }
    }

    /// The functor `hom(x, y) → hom(F x, F y)`.
    pub fn hom_functor(&self, x: Obj, y: Obj) -> FinFunctor {
        let h = self.dom.hom_index(x, y);
        FinFunctor {
            dom: self.dom.hom_arc(x, y).clone(),
            cod: self.cod.hom_arc(self.obj_map[x], self.obj_map[y]).clone(),
            obj_map: self.one_cells[h].clone(),
            mor_map: self.two_cells[h].clone(),
        }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &TwoFunctor) -> TwoFunctor {
        let mut one_cells = Vec::new();
        let mut two_cells = Vec::new();
        for x in self.dom.objects() {
            for y in self.dom.objects() {
                let h = self.dom.hom_index(x, y);
                let h2 = other.dom.hom_index(self.obj_map[x], self.obj_map[y]);
                one_cells.push(self.one_cells[h].iter().map(|&f| other.one_cells[h2][f]).collect());
                two_cells.push(self.two_cells[h].iter().map(|&a| other.two_cells[h2][a]).collect());
            }
        }
        TwoFunctor {
            dom: self.dom.clone(),
            cod: other.cod.clone(),
            obj_map: self.obj_map.iter().map(|&x| other.obj_map[x]).collect(),
            one_cells,
            two_cells,
        }
    }

    /// Exhaustively checks that every hom map is a functor and that identity
    /// 1-cells, composites of 1-cells and both whiskerings are preserved.
    pub fn validate(&self) -> Result<(), TwoCatError> {
        let (a, b) = (&*self.dom, &*self.cod);
        let n = a.num_objects();
        let bad = |s: String| Err(TwoCatError::BadTwoFunctor(s));
        if self.obj_map.len() != n || self.obj_map.iter().any(|&v| v >= b.num_objects()) {
            return bad("object map has the wrong shape".into());
        }
        if self.one_cells.len() != n * n || self.two_cells.len() != n * n {
            return bad("hom maps have the wrong shape".into());
        }
        for x in 0..n {
            for y in 0..n {
                let h = a.hom_index(x, y);
                let (hom, target) = (a.hom(x, y), b.hom(self.obj_map[x], self.obj_map[y]));
                if self.one_cells[h].len() != hom.num_objects()
                    || self.two_cells[h].len() != hom.num_morphisms()
                    || self.one_cells[h].iter().any(|&v| v >= target.num_objects())
                    || self.two_cells[h].iter().any(|&v| v >= target.num_morphisms())
                {
                    return bad(format!("hom map {x}→{y} has the wrong shape"));
                }
                self.hom_functor(x, y)
                    .validate()
                    .map_err(|e| TwoCatError::BadTwoFunctor(format!("hom {x}→{y}: {e}")))?;
            }
        }
        for x in 0..n {
            if self.one_cells[a.hom_index(x, x)][a.id1(x)] != b.id1(self.obj_map[x]) {
                return bad(format!("identity 1-cell of `{}` not preserved", a.object_name(x)));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (fx, fy, fz) = (self.obj_map[x], self.obj_map[y], self.obj_map[z]);
                    let (hxy, hyz, hxz) = (a.hom_index(x, y), a.hom_index(y, z), a.hom_index(x, z));
                    for f in a.hom(x, y).objects() {
                        for g in a.hom(y, z).objects() {
                            let lhs = self.one_cells[hxz][a.comp1(x, y, z, f, g)];
                            let rhs = b.comp1(fx, fy, fz, self.one_cells[hxy][f], self.one_cells[hyz][g]);
                            if lhs != rhs {
                                return bad("composite of 1-cells not preserved".into());
                            }
                        }
                    }
                    for al in a.hom(x, y).morphisms() {
                        for g in a.hom(y, z).objects() {
                            let lhs = self.two_cells[hxz][a.whisker_right(x, y, z, al, g)];
                            let rhs = b.whisker_right(fx, fy, fz, self.two_cells[hxy][al], self.one_cells[hyz][g]);
                            if lhs != rhs {
                                return bad("right whiskering not preserved".into());
                            }
                        }
                    }
                    for f in a.hom(x, y).objects() {
                        for be in a.hom(y, z).morphisms() {
                            let lhs = self.two_cells[hxz][a.whisker_left(x, y, z, f, be)];
                            let rhs = b.whisker_left(fx, fy, fz, self.one_cells[hxy][f], self.two_cells[hyz][be]);
                            if lhs != rhs {
                                return bad("left whiskering not preserved".into());
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// A flat key identifying the 2-functor among functors with the same
    /// domain and codomain.
    pub fn key(&self) -> Vec<usize> {
        let mut k = self.obj_map.clone();
        for v in &self.one_cells {
            k.extend_from_slice(v);
        }
        for v in &self.two_cells {
            k.extend_from_slice(v);
        }
        k
    }
}

/// Failures found by [`check_biequivalence`]; empty means biequivalence.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BiequivalenceReport {
    pub failures: Vec<String>,
}

impl BiequivalenceReport {
    pub fn is_biequivalence(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `f` is essentially surjective on objects (every object of the
/// codomain is equivalent to an image) and an equivalence on every hom
/// category.
pub fn check_biequivalence(f: &TwoFunctor) -> BiequivalenceReport {
    let (a, b) = (&*f.dom, &*f.cod);
    let mut failures = Vec::new();
    for x in a.objects() {
        for y in a.objects() {
            if !f.hom_functor(x, y).is_equivalence() {
                failures.push(format!("hom functor {}→{} is not an equivalence", a.object_name(x), a.object_name(y)));
            }
        }
    }
    for z in b.objects() {
        let hit = f.obj_map.iter().any(|&fx| objects_equivalent(b, fx, z));
        if !hit {
            failures.push(format!("object `{}` is not equivalent to an image", b.object_name(z)));
        }
    }
    failures.sort();
    failures.dedup();
    BiequivalenceReport { failures }
}

/// True when `x` and `y` are equivalent in `c`: there are 1-cells `u: x → y`
/// and `v: y → x` with both composites isomorphic to identities.
pub fn objects_equivalent(c: &FinTwoCategory, x: Obj, y: Obj) -> bool {
    let iso_to_id = |p: Obj, cell: Obj| {
        let h = c.hom(p, p);
        h.hom(cell, c.id1(p)).iter().any(|&m| h.is_isomorphism(m))
    };
    c.hom(x, y).objects().any(|u| {
        c.hom(y, x).objects().any(|v| iso_to_id(x, c.comp1(x, y, x, u, v)) && iso_to_id(y, c.comp1(y, x, y, v, u)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Var {
    Obj(Obj),
    One(usize, Obj),
    Two(usize, Mor),
}

#[derive(Debug, Clone, Copy)]
enum Constraint {
    /// `F(id1 x) = id1 F(x)`.
    Id1 { x: Obj },
    /// `F(f;g) = F(f);F(g)`; `fg` is the index of `f;g` in `hom(x, z)`.
    Comp1 { x: Obj, y: Obj, z: Obj, f: Obj, g: Obj, fg: Obj },
    /// `F(id_f) = id_{F f}`.
    Id2 { x: Obj, y: Obj, f: Obj },
    /// `F(α)` has source `F(src α)` and target `F(dst α)`.
    Type2 { x: Obj, y: Obj, a: Mor },
    /// `F(b∘a) = F(b)∘F(a)`.
    VComp { x: Obj, y: Obj, a: Mor, b: Mor, ba: Mor },
    /// `F(α * g) = F(α) * F(g)`.
    Wr { x: Obj, y: Obj, z: Obj, a: Mor, g: Obj, r: Mor },
    /// `F(f * β) = F(f) * F(β)`.
    Wl { x: Obj, y: Obj, z: Obj, f: Obj, b: Mor, r: Mor },
}

struct Enumerator<'a> {
    a: &'a FinTwoCategory,
    b: &'a FinTwoCategory,
    order: Vec<Var>,
    definer: Vec<Option<usize>>,
    checks: Vec<Vec<usize>>,
    constraints: Vec<Constraint>,
    obj: Vec<usize>,
    one: Vec<Vec<usize>>,
    two: Vec<Vec<usize>>,
    nodes: u64,
    ceiling: u64,
}

const UNSET: usize = usize::MAX;

impl<'a> Enumerator<'a> {
    fn new(a: &'a FinTwoCategory, b: &'a FinTwoCategory, ceiling: u64) -> Self {
        let n = a.num_objects();
        let hi = |x: Obj, y: Obj| x * n + y;
        let mut constraints = Vec::new();
        for x in 0..n {
            constraints.push(Constraint::Id1 { x });
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in a.hom(x, y).objects() {
                        for g in a.hom(y, z).objects() {
                            constraints.push(Constraint::Comp1 { x, y, z, f, g, fg: a.comp1(x, y, z, f, g) });
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let h = a.hom(x, y);
                for a2 in h.morphisms() {
                    constraints.push(Constraint::Type2 { x, y, a: a2 });
                }
                for f in h.objects() {
                    constraints.push(Constraint::Id2 { x, y, f });
                }
                for b2 in h.morphisms() {
                    for &a2 in h.incoming(h.src(b2)) {
                        constraints.push(Constraint::VComp { x, y, a: a2, b: b2, ba: h.compose(b2, a2) });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for al in a.hom(x, y).morphisms() {
                        for g in a.hom(y, z).objects() {
                            constraints.push(Constraint::Wr { x, y, z, a: al, g, r: a.whisker_right(x, y, z, al, g) });
                        }
                    }
                    for f in a.hom(x, y).objects() {
                        for be in a.hom(y, z).morphisms() {
                            constraints.push(Constraint::Wl { x, y, z, f, b: be, r: a.whisker_left(x, y, z, f, be) });
                        }
                    }
                }
            }
        }

        // Variable order: objects, then 1-cells, then 2-cells; within each
        // layer a cell whose value is determined by earlier cells comes
        // right after them, otherwise the first remaining cell is branched on.
        let mut order: Vec<Var> = (0..n).map(Var::Obj).collect();
        let mut definer: Vec<Option<usize>> = vec![None; n];
        let mut known_one: Vec<Vec<bool>> = (0..n * n).map(|h| vec![false; a.homs[h].num_objects()]).collect();
        let mut known_two: Vec<Vec<bool>> = (0..n * n).map(|h| vec![false; a.homs[h].num_morphisms()]).collect();
        loop {
            let mut progress = true;
            while progress {
                progress = false;
                for (ci, c) in constraints.iter().enumerate() {
                    match *c {
                        Constraint::Id1 { x } if !known_one[hi(x, x)][a.id1(x)] => {
                            known_one[hi(x, x)][a.id1(x)] = true;
                            order.push(Var::One(hi(x, x), a.id1(x)));
                            definer.push(Some(ci));
                            progress = true;
                        }
                        Constraint::Comp1 { x, y, z, f, g, fg }
                            if known_one[hi(x, y)][f] && known_one[hi(y, z)][g] && !known_one[hi(x, z)][fg] =>
                        {
                            known_one[hi(x, z)][fg] = true;
                            order.push(Var::One(hi(x, z), fg));
                            definer.push(Some(ci));
                            progress = true;
                        }
                        _ => {}
                    }
                }
            }
            let next = (0..n * n).find_map(|h| known_one[h].iter().position(|k| !k).map(|f| (h, f)));
            match next {
                Some((h, f)) => {
                    known_one[h][f] = true;
                    order.push(Var::One(h, f));
                    definer.push(None);
                }
                None => break,
            }
        }
        loop {
            let mut progress = true;
            while progress {
                progress = false;
                for (ci, c) in constraints.iter().enumerate() {
                    let out = match *c {
                        Constraint::Id2 { x, y, f } => Some((hi(x, y), a.hom(x, y).id(f))),
                        Constraint::VComp { x, y, a: a2, b: b2, ba }
                            if known_two[hi(x, y)][a2] && known_two[hi(x, y)][b2] =>
                        {
                            Some((hi(x, y), ba))
                        }
                        Constraint::Wr { x, y, z, a: al, r, .. } if known_two[hi(x, y)][al] => Some((hi(x, z), r)),
                        Constraint::Wl { x, y, z, b: be, r, .. } if known_two[hi(y, z)][be] => Some((hi(x, z), r)),
                        _ => None,
                    };
                    if let Some((h, m)) = out {
                        if !known_two[h][m] {
                            known_two[h][m] = true;
                            order.push(Var::Two(h, m));
                            definer.push(Some(ci));
                            progress = true;
                        }
                    }
                }
            }
            let next = (0..n * n).find_map(|h| known_two[h].iter().position(|k| !k).map(|m| (h, m)));
            match next {
                Some((h, m)) => {
                    known_two[h][m] = true;
                    order.push(Var::Two(h, m));
                    definer.push(None);
                }
                None => break,
            }
        }
        let mut pos: HashMap<Var, usize> = HashMap::new();
        for (i, v) in order.iter().enumerate() {
            pos.insert(*v, i);
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (ci, c) in constraints.iter().enumerate() {
            let vars = participants(c, n, a);
            let last = vars.iter().map(|v| pos[v]).max().expect("participants");
            // typing checks go first so later checks see well-typed values
            if matches!(c, Constraint::Type2 { .. }) {
                checks[last].insert(0, ci);
            } else {
                checks[last].push(ci);
            }
        }
        Enumerator {
            a,
            b,
            obj: vec![UNSET; n],
            one: (0..n * n).map(|h| vec![UNSET; a.homs[h].num_objects()]).collect(),
            two: (0..n * n).map(|h| vec![UNSET; a.homs[h].num_morphisms()]).collect(),
            order,
            definer,
            checks,
            constraints,
            nodes: 0,
            ceiling,
        }
    }

    fn hom_b(&self, x: Obj, y: Obj) -> &FinCategory {
        self.b.hom(self.obj[x], self.obj[y])
    }

    /// Value of the defining constraint's output from its inputs.
    fn eval(&self, c: &Constraint) -> usize {
        let n = self.a.num_objects();
        match *c {
            Constraint::Id1 { x } => self.b.id1(self.obj[x]),
            Constraint::Comp1 { x, y, z, f, g, .. } => {
                let (fx, fy, fz) = (self.obj[x], self.obj[y], self.obj[z]);
                self.b.comp1(fx, fy, fz, self.one[x * n + y][f], self.one[y * n + z][g])
            }
            Constraint::Id2 { x, y, f } => self.hom_b(x, y).id(self.one[x * n + y][f]),
            Constraint::VComp { x, y, a, b, .. } => {
                let h = x * n + y;
                self.hom_b(x, y).compose(self.two[h][b], self.two[h][a])
            }
            Constraint::Wr { x, y, z, a, g, .. } => {
                let (fx, fy, fz) = (self.obj[x], self.obj[y], self.obj[z]);
                self.b.whisker_right(fx, fy, fz, self.two[x * n + y][a], self.one[y * n + z][g])
            }
            Constraint::Wl { x, y, z, f, b, .. } => {
                let (fx, fy, fz) = (self.obj[x], self.obj[y], self.obj[z]);
                self.b.whisker_left(fx, fy, fz, self.one[x * n + y][f], self.two[y * n + z][b])
            }
            Constraint::Type2 { .. } => unreachable!("typing constraints define nothing"),
        }
    }

    fn holds(&self, c: &Constraint) -> bool {
        let n = self.a.num_objects();
        match *c {
            Constraint::Id1 { x } => self.one[x * n + x][self.a.id1(x)] == self.eval(c),
            Constraint::Comp1 { x, z, fg, .. } => self.one[x * n + z][fg] == self.eval(c),
            Constraint::Id2 { x, y, f } => self.two[x * n + y][self.a.hom(x, y).id(f)] == self.eval(c),
            Constraint::Type2 { x, y, a } => {
                let h = x * n + y;
                let (ha, hb) = (self.a.hom(x, y), self.hom_b(x, y));
                let v = self.two[h][a];
                hb.src(v) == self.one[h][ha.src(a)] && hb.dst(v) == self.one[h][ha.dst(a)]
            }
            Constraint::VComp { x, y, ba, .. } => self.two[x * n + y][ba] == self.eval(c),
            Constraint::Wr { x, z, r, .. } | Constraint::Wl { x, z, r, .. } => self.two[x * n + z][r] == self.eval(c),
        }
    }

    fn set(&mut self, v: Var, value: usize) {
        match v {
            Var::Obj(x) => self.obj[x] = value,
            Var::One(h, f) => self.one[h][f] = value,
            Var::Two(h, m) => self.two[h][m] = value,
        }
    }

    fn candidates(&self, v: Var) -> Vec<usize> {
        let n = self.a.num_objects();
        match v {
            Var::Obj(_) => self.b.objects().collect(),
            Var::One(h, _) => self.hom_b(h / n, h % n).objects().collect(),
            Var::Two(h, m) => {
                let (x, y) = (h / n, h % n);
                let ha = self.a.hom(x, y);
                self.hom_b(x, y).hom(self.one[h][ha.src(m)], self.one[h][ha.dst(m)]).to_vec()
            }
        }
    }

    fn run(&mut self, p: usize, out: &mut Vec<Vec<usize>>) -> Result<(), TwoCatError> {
        if p == self.order.len() {
            let mut key = self.obj.clone();
            for v in &self.one {
                key.extend_from_slice(v);
            }
            for v in &self.two {
                key.extend_from_slice(v);
            }
            out.push(key);
            return Ok(());
        }
        let var = self.order[p];
        let values = match self.definer[p] {
            Some(ci) => vec![self.eval(&self.constraints[ci])],
            None => self.candidates(var),
        };
        for value in values {
            self.nodes += 1;
            if self.nodes > self.ceiling {
                return Err(TwoCatError::ExplosionGuard { ceiling: self.ceiling, nodes: self.nodes });
            }
            self.set(var, value);
            if self.checks[p].iter().all(|&ci| self.holds(&self.constraints[ci])) {
                self.run(p + 1, out)?;
            }
        }
        self.set(var, UNSET);
        Ok(())
    }
}

fn participants(c: &Constraint, n: usize, a: &FinTwoCategory) -> Vec<Var> {
    let hi = |x: Obj, y: Obj| x * n + y;
    match *c {
        Constraint::Id1 { x } => vec![Var::Obj(x), Var::One(hi(x, x), a.id1(x))],
        Constraint::Comp1 { x, y, z, f, g, fg } => vec![
            Var::Obj(x),
            Var::Obj(y),
            Var::Obj(z),
            Var::One(hi(x, y), f),
            Var::One(hi(y, z), g),
            Var::One(hi(x, z), fg),
        ],
        Constraint::Id2 { x, y, f } => {
            vec![Var::Obj(x), Var::Obj(y), Var::One(hi(x, y), f), Var::Two(hi(x, y), a.hom(x, y).id(f))]
        }
        Constraint::Type2 { x, y, a: m } => {
            let h = a.hom(x, y);
            vec![
                Var::Obj(x),
                Var::Obj(y),
                Var::One(hi(x, y), h.src(m)),
                Var::One(hi(x, y), h.dst(m)),
                Var::Two(hi(x, y), m),
            ]
        }
        Constraint::VComp { x, y, a: m, b, ba } => {
            vec![Var::Obj(x), Var::Obj(y), Var::Two(hi(x, y), m), Var::Two(hi(x, y), b), Var::Two(hi(x, y), ba)]
        }
        Constraint::Wr { x, y, z, a: m, g, r } => vec![
            Var::Obj(x),
            Var::Obj(y),
            Var::Obj(z),
            Var::Two(hi(x, y), m),
            Var::One(hi(y, z), g),
            Var::Two(hi(x, z), r),
        ],
        Constraint::Wl { x, y, z, f, b, r } => vec![
            Var::Obj(x),
            Var::Obj(y),
            Var::Obj(z),
            Var::One(hi(x, y), f),
            Var::Two(hi(y, z), b),
            Var::Two(hi(x, z), r),
        ],
    }
}

/// Flat keys (see [`TwoFunctor::key`]) of all strict 2-functors `a → b`, in
/// the deterministic order of the search.
pub fn enumerate_two_functor_keys(
    a: &FinTwoCategory,
    b: &FinTwoCategory,
    ceiling: u64,
) -> Result<Vec<Vec<usize>>, TwoCatError> {
    let mut e = Enumerator::new(a, b, ceiling);
    let mut out = Vec::new();
    e.run(0, &mut out)?;
    Ok(out)
}

/// Rebuilds a 2-functor from its flat key.
pub fn two_functor_from_key(a: &Arc<FinTwoCategory>, b: &Arc<FinTwoCategory>, key: &[usize]) -> TwoFunctor {
    let n = a.num_objects();
    let obj_map = key[..n].to_vec();
    let mut at = n;
    let mut one_cells = Vec::with_capacity(n * n);
    for h in 0..n * n {
        let k = a.homs[h].num_objects();
        one_cells.push(key[at..at + k].to_vec());
        at += k;
    }
    let mut two_cells = Vec::with_capacity(n * n);
    for h in 0..n * n {
        let k = a.homs[h].num_morphisms();
        two_cells.push(key[at..at + k].to_vec());
        at += k;
    }
    TwoFunctor { dom: a.clone(), cod: b.clone(), obj_map, one_cells, two_cells }
}

/// All strict 2-functors `a → b`, duplicate-free, in a deterministic order.
///
/// Fails with [`TwoCatError::ExplosionGuard`] once the search has visited
/// more than `ceiling` nodes.
pub fn enumerate_two_functors(
    a: &Arc<FinTwoCategory>,
    b: &Arc<FinTwoCategory>,
    ceiling: u64,
) -> Result<Vec<TwoFunctor>, TwoCatError> {
    Ok(enumerate_two_functor_keys(a, b, ceiling)?.iter().map(|k| two_functor_from_key(a, b, k)).collect())
}

/// The hom-wise twisted arrow 2-category together with its marking.
#[derive(Debug, Clone)]
pub struct HomTwist {
    pub category: FinTwoCategory,
    /// `marked[h][m]`: the 2-cell `m` of hom `h` is marked, i.e. both of its
    /// components are isomorphisms.
    pub marked: Vec<Vec<bool>>,
    /// Twisted arrow data of each hom category of the input.
    pub twisted: Vec<TwistedArrow>,
}

/// Replaces every hom category by its twisted arrow category.
///
/// The 1-cells of the result are the 2-cells of `c`; composition of 1-cells is
/// horizontal composition of 2-cells, and whiskering a twisted morphism
/// `(v, u)` by a 2-cell `τ: g ⇒ g'` gives `(v * id_g, u * id_g')`.
pub fn hom_twist(c: &FinTwoCategory) -> HomTwist {
    let n = c.num_objects();
    let mut twisted = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            twisted.push(twisted_arrow_data(c.hom(x, y)));
        }
    }
    let homs: Vec<Arc<FinCategory>> = twisted.iter().map(|t| t.category.clone()).collect();
    let id1 = (0..n).map(|x| c.hom(x, x).id(c.id1(x))).collect();
    let tw = &twisted;
    let category = FinTwoCategory::from_parts(
        c.obj_names.clone(),
        homs,
        id1,
        |x, y, z, s, t| c.hcomp2(x, y, z, s, t),
        |x, y, z, m, t| {
            let hyz = c.hom(y, z);
            let src_sigma = tw[x * n + y].category.src(m);
            let (v, u) = tw[x * n + y].pairs[m];
            let v2 = c.hcomp2(x, y, z, v, hyz.id(hyz.src(t)));
            let u2 = c.hcomp2(x, y, z, u, hyz.id(hyz.dst(t)));
            tw[x * n + z].morphism(c.hcomp2(x, y, z, src_sigma, t), v2, u2).expect("whiskered twisted morphism")
        },
        |x, y, z, s, m| {
            let hxy = c.hom(x, y);
            let src_tau = tw[y * n + z].category.src(m);
            let (v, u) = tw[y * n + z].pairs[m];
            let v2 = c.hcomp2(x, y, z, hxy.id(hxy.src(s)), v);
            let u2 = c.hcomp2(x, y, z, hxy.id(hxy.dst(s)), u);
            tw[x * n + z].morphism(c.hcomp2(x, y, z, s, src_tau), v2, u2).expect("whiskered twisted morphism")
        },
    );
    let marked = (0..n * n)
        .map(|h| {
            let base = c.homs[h].as_ref();
            twisted[h].pairs.iter().map(|&(v, u)| base.is_isomorphism(v) && base.is_isomorphism(u)).collect()
        })
        .collect();
    HomTwist { category, marked, twisted }
}

/// `opposite` applied to every hom category (reverses 2-cells).
pub fn op2(c: &FinTwoCategory) -> FinTwoCategory {
    let homs = c.homs.iter().map(|h| Arc::new(opposite(h))).collect();
    FinTwoCategory::from_parts(
        c.obj_names.clone(),
        homs,
        c.id1.clone(),
        |x, y, z, f, g| c.comp1(x, y, z, f, g),
        |x, y, z, a, g| c.whisker_right(x, y, z, a, g),
        |x, y, z, f, b| c.whisker_left(x, y, z, f, b),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::one_object;

    fn b2_cyclic(n: usize) -> FinTwoCategory {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let table: Vec<usize> = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        let hom = Arc::new(one_object(&names, &table, 0));
        FinTwoCategory::from_parts(
            vec!["*".into()],
            vec![hom],
            vec![0],
            |_, _, _, _, _| 0,
            |_, _, _, a, _| a,
            |_, _, _, _, b| b,
        )
    }

    #[test]
    fn terminal_and_b2_validate() {
        FinTwoCategory::terminal().validate().unwrap();
        let b = b2_cyclic(2);
        b.validate().unwrap();
        let back = validate_two_category(&b.to_raw()).unwrap();
        assert_eq!(back, b);
    }

    #[test]
    fn noncommutative_table_fails_interchange() {
        // S3 as permutations of {0,1,2}; composition (g∘f)(i) = g(f(i)).
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
        let mut table = Vec::new();
        for g in &perms {
            for f in &perms {
                table.push(idx([g[f[0]], g[f[1]], g[f[2]]]));
            }
        }
        let names: Vec<String> = (0..6).map(|i| format!("s{i}")).collect();
        let hom = one_object(&names, &table, 0);
        let rows = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .map(|(a, b)| (names[a].clone(), names[b].clone(), names[table[a * 6 + b]].clone()))
            .collect();
        let raw = RawTwoCategory {
            objects: vec!["*".into()],
            homs: vec![("*".into(), "*".into(), hom.to_raw())],
            id1: vec![("*".into(), "*".into())],
            hcomp: vec![("*".into(), "*".into(), "*".into(), rows)],
        };
        assert!(matches!(validate_two_category(&raw), Err(TwoCatError::InterchangeFailure { .. })));
    }

    #[test]
    fn from_one_category_examples() {
        let i = FinCategory::ordinal(1);
        let c = from_one_category(&i);
        c.validate().unwrap();
        assert_eq!(c.num_two_cells(), 3);
        assert_eq!(underlying_one_category(&c).unwrap(), i);
        assert_eq!(from_one_category(&FinCategory::terminal()).num_two_cells(), 1);
    }

    #[test]
    fn orientals() {
        let o0 = oriental(0, 6).unwrap();
        assert_eq!((o0.num_objects(), o0.num_one_cells(), o0.num_two_cells()), (1, 1, 1));
        let o2 = oriental(2, 6).unwrap();
        o2.validate().unwrap();
        let h = o2.hom(0, 2);
        assert_eq!(h.object_names(), &["{0,2}".to_string(), "{0,1,2}".to_string()]);
        assert_eq!(h.hom(0, 1).len(), 1);
        assert_eq!(h.hom(1, 0).len(), 0);
        let o3 = oriental(3, 6).unwrap();
        assert_eq!(o3.hom(0, 3).num_objects(), 4);
        for n in 0..=4 {
            oriental(n, 6).unwrap().validate().unwrap();
        }
        assert!(matches!(oriental(7, 6), Err(TwoCatError::BoundExceeded { .. })));
    }

    fn arc(c: FinTwoCategory) -> Arc<FinTwoCategory> {
        Arc::new(c)
    }

    #[test]
    fn two_functor_counts() {
        let o0 = arc(oriental(0, 6).unwrap());
        let o1 = arc(oriental(1, 6).unwrap());
        let o2 = arc(oriental(2, 6).unwrap());
        let b = arc(b2_cyclic(2));
        let three = arc(oriental(2, 6).unwrap());
        assert_eq!(enumerate_two_functors(&o0, &three, 1000).unwrap().len(), 3);
        assert_eq!(enumerate_two_functors(&o2, &b, 1000).unwrap().len(), 2);
        let i = arc(from_one_category(&FinCategory::ordinal(1)));
        let fs = enumerate_two_functors(&o1, &i, 1000).unwrap();
        assert_eq!(fs.len(), 3);
        for f in &fs {
            f.validate().unwrap();
        }
    }

    #[test]
    fn explosion_guard_trips() {
        let o3 = arc(oriental(3, 6).unwrap());
        let b = arc(b2_cyclic(3));
        match enumerate_two_functors(&o3, &b, 5) {
            Err(TwoCatError::ExplosionGuard { ceiling, .. }) => assert_eq!(ceiling, 5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn oriental_maps_are_two_functors() {
        let o1 = arc(oriental(1, 6).unwrap());
        let o2 = arc(oriental(2, 6).unwrap());
        for phi in [[0, 1], [0, 2], [1, 2], [0, 0], [2, 2]] {
            oriental_map(&phi, &o1, &o2).validate().unwrap();
        }
        oriental_map(&[0, 0, 1], &o2, &o1).validate().unwrap();
    }

    #[test]
    fn op1_and_products_validate() {
        let o2 = oriental(2, 6).unwrap();
        op1(&o2).validate().unwrap();
        op2(&o2).validate().unwrap();
        let p = product2(&o2, &b2_cyclic(2));
        p.validate().unwrap();
        assert_eq!(p.num_objects(), 3);
    }

    #[test]
    fn hom_twist_examples() {
        let i = FinCategory::ordinal(2);
        let t = hom_twist(&from_one_category(&i));
        t.category.validate().unwrap();
        assert!(t.category.is_locally_discrete());
        let b = b2_cyclic(2);
        let t = hom_twist(&b);
        t.category.validate().unwrap();
        let h = t.category.hom(0, 0);
        assert_eq!(h.num_objects(), 2);
        for a in h.objects() {
            assert_eq!(h.out_of(a).len(), 4);
        }
        assert!(t.marked[0].iter().all(|&m| m));
        let o2 = oriental(2, 6).unwrap();
        let t = hom_twist(&o2);
        t.category.validate().unwrap();
        assert!(t.marked[o2.hom_index(0, 2)].iter().filter(|&&m| !m).count() > 0);
    }

    #[test]
    fn biequivalence_of_identity() {
        let b = arc(b2_cyclic(3));
        assert!(check_biequivalence(&TwoFunctor::identity(b)).is_biequivalence());
    }
}
