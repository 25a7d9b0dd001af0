//! The interchange format: one self-describing JSON document per entity,
//! with explicit composition tables.

use std::collections::HashMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use tw2cat_core::adj::OrdMap;
use tw2cat_core::cat::{validate_category, FinCategory, FinFunctor, RawCategory};
use tw2cat_core::groth::CatValuedTwoFunctor;
use tw2cat_core::homology::AbPresentation;
use tw2cat_core::linalg::IntMatrix;
use tw2cat_core::tw2::Monoid;
use tw2cat_core::two_cat::{validate_two_category, FinTwoCategory, RawTwoCategory};

/// Version tag written to and required in every document.
pub const FORMAT: &str = "tw2cat/1";

/// A top-level document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    #[serde(flatten)]
    pub entity: Entity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Entity {
    Category(CategoryDoc),
    TwoCategory(TwoCategoryDoc),
    Monoid(MonoidDoc),
    AbDiagram(AbDiagramDoc),
    Ordmap(OrdMapDoc),
    Functor(FunctorDoc),
    CatValuedFunctor(CatValuedDoc),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Category(_) => "category",
            Entity::TwoCategory(_) => "two-category",
            Entity::Monoid(_) => "monoid",
            Entity::AbDiagram(_) => "ab-diagram",
            Entity::Ordmap(_) => "ordmap",
            Entity::Functor(_) => "functor",
            Entity::CatValuedFunctor(_) => "cat-valued-functor",
        }
    }
}

impl Document {
    pub fn new(entity: Entity) -> Document {
        Document { format: FORMAT.into(), entity }
    }

    pub fn parse(text: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(text).context("document is not valid tw2cat JSON")?;
        if doc.format != FORMAT {
            bail!("unsupported format `{}`, expected `{FORMAT}`", doc.format);
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// A finite category: objects, morphisms, identity per object, and the full
/// composition table as `[g, f, g∘f]` rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    /// `[object, identity morphism]` pairs.
    pub identities: Vec<[String; 2]>,
    pub compose: Vec<[String; 3]>,
}

impl CategoryDoc {
    pub fn from_category(c: &FinCategory) -> CategoryDoc {
        CategoryDoc::from_raw(c.to_raw())
    }

    fn from_raw(raw: RawCategory) -> CategoryDoc {
        CategoryDoc {
            objects: raw.objects,
            morphisms: raw.morphisms.into_iter().map(|(id, src, dst)| MorphismDoc { id, src, dst }).collect(),
            identities: raw.identities.into_iter().map(|(o, m)| [o, m]).collect(),
            compose: raw.compose.into_iter().map(|(g, f, gf)| [g, f, gf]).collect(),
        }
    }

    fn to_raw(&self) -> RawCategory {
        RawCategory {
            objects: self.objects.clone(),
            morphisms: self.morphisms.iter().map(|m| (m.id.clone(), m.src.clone(), m.dst.clone())).collect(),
            identities: self.identities.iter().map(|[o, m]| (o.clone(), m.clone())).collect(),
            compose: self.compose.iter().map(|[g, f, gf]| (g.clone(), f.clone(), gf.clone())).collect(),
        }
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        Ok(validate_category(&self.to_raw())?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomDoc {
    pub src: String,
    pub dst: String,
    #[serde(flatten)]
    pub category: CategoryDoc,
}

/// Horizontal composition `hom(x, y) × hom(y, z) → hom(x, z)` on 2-cells as
/// `[α, β, α * β]` rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HcompDoc {
    pub x: String,
    pub y: String,
    pub z: String,
    pub table: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCategoryDoc {
    pub objects: Vec<String>,
    pub hom: Vec<HomDoc>,
    /// `[object, identity 1-cell]` pairs.
    pub identities: Vec<[String; 2]>,
    pub hcomp: Vec<HcompDoc>,
}

impl TwoCategoryDoc {
    pub fn from_two_category(c: &FinTwoCategory) -> TwoCategoryDoc {
        let raw = c.to_raw();
        TwoCategoryDoc {
            objects: raw.objects,
            hom: raw
                .homs
                .into_iter()
                .map(|(src, dst, h)| HomDoc { src, dst, category: CategoryDoc::from_raw(h) })
                .collect(),
            identities: raw.id1.into_iter().map(|(o, f)| [o, f]).collect(),
            hcomp: raw
                .hcomp
                .into_iter()
                .map(|(x, y, z, rows)| HcompDoc {
                    x,
                    y,
                    z,
                    table: rows.into_iter().map(|(a, b, c)| [a, b, c]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_two_category(&self) -> Result<FinTwoCategory> {
        let raw = RawTwoCategory {
            objects: self.objects.clone(),
            homs: self.hom.iter().map(|h| (h.src.clone(), h.dst.clone(), h.category.to_raw())).collect(),
            id1: self.identities.iter().map(|[o, f]| (o.clone(), f.clone())).collect(),
            hcomp: self
                .hcomp
                .iter()
                .map(|h| {
                    let rows = h.table.iter().map(|[a, b, c]| (a.clone(), b.clone(), c.clone())).collect();
                    (h.x.clone(), h.y.clone(), h.z.clone(), rows)
                })
                .collect(),
        };
        Ok(validate_two_category(&raw)?)
    }
}

/// A finite monoid; `op[i][j]` names `elements[i] · elements[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidDoc {
    pub elements: Vec<String>,
    pub op: Vec<Vec<String>>,
    pub unit: String,
}

impl MonoidDoc {
    pub fn from_monoid(a: &Monoid) -> MonoidDoc {
        let e = a.elements();
        MonoidDoc {
            elements: e.to_vec(),
            op: (0..a.size()).map(|i| (0..a.size()).map(|j| e[a.op(i, j)].clone()).collect()).collect(),
            unit: e[a.unit()].clone(),
        }
    }

    pub fn to_monoid(&self) -> Result<Monoid> {
        let index: HashMap<&str, usize> = self.elements.iter().enumerate().map(|(i, e)| (e.as_str(), i)).collect();
        let look = |name: &str| index.get(name).copied().ok_or_else(|| anyhow!("unknown element `{name}`"));
        let n = self.elements.len();
        if self.op.len() != n || self.op.iter().any(|row| row.len() != n) {
            bail!("operation table must be {n} × {n}");
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &self.op {
            for v in row {
                table.push(look(v)?);
            }
        }
        Ok(Monoid::new(self.elements.clone(), table, look(&self.unit)?)?)
    }
}

/// A presented abelian group: `ℤ^generators` modulo the columns of
/// `relations` (a generators × r matrix given as rows).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub generators: usize,
    pub relations: Vec<Vec<i64>>,
}

/// A functor from a category to abelian groups: one presented group per
/// object and one integer matrix per morphism (rows index generators of the
/// target), both in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbDiagramDoc {
    pub base: CategoryDoc,
    pub groups: Vec<GroupDoc>,
    pub maps: Vec<Vec<Vec<i64>>>,
}

fn matrix(rows: &[Vec<i64>], shape: (usize, usize), what: &str) -> Result<IntMatrix> {
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        bail!("{what} must be a {} × {} matrix", shape.0, shape.1);
    }
    Ok(IntMatrix::from_rows(rows, shape.1))
}

fn small_rows(m: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    m.to_rows()
        .into_iter()
        .map(|r| {
            r.iter().map(|v| v.to_i64().ok_or_else(|| anyhow!("matrix entry {v} does not fit in 64 bits"))).collect()
        })
        .collect()
}

impl AbDiagramDoc {
    pub fn from_parts(base: &FinCategory, groups: &[AbPresentation], maps: &[IntMatrix]) -> Result<AbDiagramDoc> {
        Ok(AbDiagramDoc {
            base: CategoryDoc::from_category(base),
            groups: groups
                .iter()
                .map(|g| Ok(GroupDoc { generators: g.generators, relations: small_rows(&g.relations)? }))
                .collect::<Result<_>>()?,
            maps: maps.iter().map(small_rows).collect::<Result<_>>()?,
        })
    }

    /// The base category, a presentation per object and a matrix per
    /// morphism, with shapes checked.
    pub fn to_parts(&self) -> Result<(FinCategory, Vec<AbPresentation>, Vec<IntMatrix>)> {
        let base = self.base.to_category()?;
        if self.groups.len() != base.num_objects() || self.maps.len() != base.num_morphisms() {
            bail!("need one group per object and one map per morphism");
        }
        let groups: Vec<AbPresentation> = self
            .groups
            .iter()
            .enumerate()
            .map(|(i, g)| {
                // An empty list stands for no relations.
                let relations = if g.relations.is_empty() {
                    IntMatrix::zeros(g.generators, 0)
                } else {
                    matrix(&g.relations, (g.generators, g.relations[0].len()), &format!("relations of group {i}"))?
                };
                Ok(AbPresentation { generators: g.generators, relations })
            })
            .collect::<Result<_>>()?;
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(m, rows)| {
                let (s, d) = (base.src(m), base.dst(m));
                let shape = (groups[d].generators, groups[s].generators);
                let e = matrix(rows, shape, &format!("map of `{}`", base.morphism_name(m)))?;
                Ok(e)
            })
            .collect::<Result<_>>()?;
        Ok((base, groups, maps))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrdMapDoc {
    pub x: usize,
    pub y: usize,
    pub n: usize,
    pub m: usize,
    pub map: Vec<usize>,
}

impl OrdMapDoc {
    pub fn from_ordmap(f: &OrdMap) -> OrdMapDoc {
        OrdMapDoc { x: f.x, y: f.y, n: f.n, m: f.m, map: f.map.clone() }
    }

    pub fn to_ordmap(&self) -> Result<OrdMap> {
        if self.map.len() != self.n {
            bail!("map has {} entries, expected n = {}", self.map.len(), self.n);
        }
        Ok(OrdMap::new(self.x, self.y, self.m, self.map.clone())?)
    }
}

/// A functor between finite categories, by names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub dom: CategoryDoc,
    pub cod: CategoryDoc,
    /// `[object, image]` pairs in the order of `dom.objects`.
    pub objects: Vec<[String; 2]>,
    /// `[morphism, image]` pairs in the order of `dom.morphisms`.
    pub morphisms: Vec<[String; 2]>,
}

fn name_map(
    pairs: &[[String; 2]],
    dom: &[String],
    what: &str,
    look: impl Fn(&str) -> Option<usize>,
) -> Result<Vec<usize>> {
    let given: HashMap<&str, &str> = pairs.iter().map(|[a, b]| (a.as_str(), b.as_str())).collect();
    if given.len() != pairs.len() || pairs.len() != dom.len() {
        bail!("{what} map must list every element of the domain exactly once");
    }
    dom.iter()
        .map(|a| {
            let b = given.get(a.as_str()).ok_or_else(|| anyhow!("{what} `{a}` has no image"))?;
            look(b).ok_or_else(|| anyhow!("{what} image `{b}` is unknown"))
        })
        .collect()
}

fn functor_from_names(
    dom: &Arc<FinCategory>,
    cod: &Arc<FinCategory>,
    objects: &[[String; 2]],
    morphisms: &[[String; 2]],
) -> Result<FinFunctor> {
    let obj_map = name_map(objects, dom.object_names(), "object", |b| cod.object_by_name(b))?;
    let mor_map = name_map(morphisms, dom.morphism_names(), "morphism", |b| cod.morphism_by_name(b))?;
    let f = FinFunctor { dom: dom.clone(), cod: cod.clone(), obj_map, mor_map };
    f.validate()?;
    Ok(f)
}

fn functor_names(f: &FinFunctor) -> (Vec<[String; 2]>, Vec<[String; 2]>) {
    let objects = f
        .dom
        .objects()
        .map(|o| [f.dom.object_name(o).to_string(), f.cod.object_name(f.obj_map[o]).to_string()])
        .collect();
    let morphisms = f
        .dom
        .morphisms()
        .map(|m| [f.dom.morphism_name(m).to_string(), f.cod.morphism_name(f.mor_map[m]).to_string()])
        .collect();
    (objects, morphisms)
}

impl FunctorDoc {
    pub fn from_functor(f: &FinFunctor) -> FunctorDoc {
        let (objects, morphisms) = functor_names(f);
        FunctorDoc {
            dom: CategoryDoc::from_category(&f.dom),
            cod: CategoryDoc::from_category(&f.cod),
            objects,
            morphisms,
        }
    }

    pub fn to_functor(&self) -> Result<FinFunctor> {
        let dom = Arc::new(self.dom.to_category()?);
        let cod = Arc::new(self.cod.to_category()?);
        functor_from_names(&dom, &cod, &self.objects, &self.morphisms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDoc {
    pub object: String,
    pub category: CategoryDoc,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    pub morphism: String,
    pub objects: Vec<[String; 2]>,
    pub morphisms: Vec<[String; 2]>,
}

/// A functor from a finite 1-category to finite categories: a value per
/// object and a functor per morphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatValuedDoc {
    pub base: CategoryDoc,
    pub values: Vec<ValueDoc>,
    pub actions: Vec<ActionDoc>,
}

impl CatValuedDoc {
    pub fn from_parts(base: &FinCategory, values: &[Arc<FinCategory>], actions: &[FinFunctor]) -> CatValuedDoc {
        CatValuedDoc {
            base: CategoryDoc::from_category(base),
            values: base
                .objects()
                .map(|o| ValueDoc {
                    object: base.object_name(o).into(),
                    category: CategoryDoc::from_category(&values[o]),
                })
                .collect(),
            actions: base
                .morphisms()
                .map(|m| {
                    let (objects, morphisms) = functor_names(&actions[m]);
                    ActionDoc { morphism: base.morphism_name(m).into(), objects, morphisms }
                })
                .collect(),
        }
    }

    /// The base category and the validated 2-functor over it.
    pub fn to_functor(&self) -> Result<(FinCategory, CatValuedTwoFunctor)> {
        let base = self.base.to_category()?;
        if self.values.len() != base.num_objects() || self.actions.len() != base.num_morphisms() {
            bail!("need one value per object and one action per morphism");
        }
        let mut values = vec![None; base.num_objects()];
        for v in &self.values {
            let o = base.object_by_name(&v.object).ok_or_else(|| anyhow!("unknown object `{}`", v.object))?;
            values[o] = Some(Arc::new(v.category.to_category().with_context(|| format!("value at `{}`", v.object))?));
        }
        let values: Vec<Arc<FinCategory>> =
            values.into_iter().map(|v| v.ok_or_else(|| anyhow!("an object has no value"))).collect::<Result<_>>()?;
        let mut actions = vec![None; base.num_morphisms()];
        for a in &self.actions {
            let m = base.morphism_by_name(&a.morphism).ok_or_else(|| anyhow!("unknown morphism `{}`", a.morphism))?;
            let f = functor_from_names(&values[base.src(m)], &values[base.dst(m)], &a.objects, &a.morphisms)
                .with_context(|| format!("action of `{}`", a.morphism))?;
            actions[m] = Some(f);
        }
        let actions: Vec<FinFunctor> =
            actions.into_iter().map(|a| a.ok_or_else(|| anyhow!("a morphism has no action"))).collect::<Result<_>>()?;
        let f = CatValuedTwoFunctor::from_functor(&base, values, actions);
        f.validate()?;
        Ok((base, f))
    }
}
