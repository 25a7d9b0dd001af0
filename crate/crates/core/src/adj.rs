//! Combinatorics of the walking adjunction: `(x, y)`-ordinals, concatenation,
//! gaps and their duality, gapped, pointed and split ordinals with the
//! adjoints of the forgetful functors, the compatibility graph `E_σ`, and
//! bounded comma categories over a 2-cell `σ`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

use crate::cat::{FinCategory, Obj};

/// Largest ordinal accepted by [`ordinal_homs`].
pub const ORDINAL_BOUND: usize = 16;

/// Default cap on the number of objects of a [`comma_truncated`] category.
pub const DEFAULT_COMMA_CEILING: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdjError {
    #[error("bound exceeded: {what} is {value}, limit {limit}")]
    BoundExceeded { what: String, value: usize, limit: usize },
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("invalid ordinal map: {0}")]
    Invalid(String),
}

/// A map of `(x, y)`-ordinals `⟨n⟩ → ⟨m⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrdMap {
    pub x: usize,
    pub y: usize,
    pub n: usize,
    pub m: usize,
    pub map: Vec<usize>,
}

/// Whether `⟨n⟩` is an `(x, y)`-ordinal: it must contain its preserved
/// endpoints.
pub fn is_ordinal(x: usize, y: usize, n: usize) -> bool {
    x <= 1 && y <= 1 && n >= x && n >= y
}

fn is_ord_map(x: usize, y: usize, n: usize, m: usize, f: &[usize]) -> bool {
    f.len() == n
        && f.iter().all(|&v| v < m)
        && f.windows(2).all(|w| w[0] <= w[1])
        && (x == 0 || n == 0 || f[0] == 0)
        && (y == 0 || n == 0 || f[n - 1] == m - 1)
}

impl OrdMap {
    pub fn new(x: usize, y: usize, m: usize, map: Vec<usize>) -> Result<OrdMap, AdjError> {
        let f = OrdMap { x, y, n: map.len(), m, map };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(x: usize, y: usize, n: usize) -> OrdMap {
        OrdMap { x, y, n, m: n, map: (0..n).collect() }
    }

    pub fn validate(&self) -> Result<(), AdjError> {
        if !is_ordinal(self.x, self.y, self.n) || !is_ordinal(self.x, self.y, self.m) {
            return Err(AdjError::Invalid(format!(
                "⟨{}⟩ → ⟨{}⟩ is not a map of ({},{})-ordinals",
                self.n, self.m, self.x, self.y
            )));
        }
        if !is_ord_map(self.x, self.y, self.n, self.m, &self.map) {
            return Err(AdjError::Invalid(format!("{:?} is not monotone and endpoint preserving", self.map)));
        }
        Ok(())
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `g ∘ self`.
    pub fn then(&self, g: &OrdMap) -> Result<OrdMap, AdjError> {
        if self.m != g.n || (self.x, self.y) != (g.x, g.y) {
            return Err(AdjError::ParameterMismatch("maps are not composable".into()));
        }
        Ok(OrdMap { x: self.x, y: self.y, n: self.n, m: g.m, map: self.map.iter().map(|&i| g.map[i]).collect() })
    }

    /// `|σ⁻¹(j)|`.
    pub fn fiber_size(&self, j: usize) -> usize {
        self.map.iter().filter(|&&v| v == j).count()
    }
}

/// All monotone endpoint-preserving maps `⟨n⟩ → ⟨m⟩` in lexicographic order.
pub fn ordinal_homs(x: usize, y: usize, n: usize, m: usize) -> Result<Vec<OrdMap>, AdjError> {
    for (what, v) in [("source size", n), ("target size", m)] {
        if v > ORDINAL_BOUND {
            return Err(AdjError::BoundExceeded { what: what.into(), value: v, limit: ORDINAL_BOUND });
        }
    }
    if !is_ordinal(x, y, n) || !is_ordinal(x, y, m) {
        return Err(AdjError::Invalid(format!("⟨{n}⟩ or ⟨{m}⟩ is not a ({x},{y})-ordinal")));
    }
    Ok(raw_maps(x, y, n, m).into_iter().map(|map| OrdMap { x, y, n, m, map }).collect())
}

fn raw_maps(x: usize, y: usize, n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(x: usize, y: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if is_ord_map(x, y, n, m, cur) {
                out.push(cur.clone());
            }
            return;
        }
        let lo = cur.last().copied().unwrap_or(0);
        for v in lo..m {
            if cur.is_empty() && x == 1 && v != 0 {
                break;
            }
            cur.push(v);
            go(x, y, n, m, cur, out);
            cur.pop();
        }
    }
    go(x, y, n, m, &mut cur, &mut out);
    out
}

/// Concatenation `f ⊗_y g`, identifying the last element of the first factor
/// with the first of the second when `y = 1`.
pub fn tensor(y_mid: usize, f: &OrdMap, g: &OrdMap) -> Result<OrdMap, AdjError> {
    if f.y != y_mid || g.x != y_mid {
        return Err(AdjError::ParameterMismatch(format!("({},{}) ⊗_{} ({},{})", f.x, f.y, y_mid, g.x, g.y)));
    }
    let (n, m) = (f.n - y_mid + g.n, f.m - y_mid + g.m);
    let mut map: Vec<usize> = f.map.clone();
    map.truncate(f.n - y_mid);
    map.extend(g.map.iter().map(|&v| v + f.m - y_mid));
    Ok(OrdMap { x: f.x, y: g.y, n, m, map })
}

/// A gap `g: ⟨n⟩ → ⟨2⟩`, determined by its cut `|g⁻¹(0)|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gap {
    pub map: OrdMap,
}

impl Gap {
    pub fn from_cut(x: usize, y: usize, n: usize, cut: usize) -> Gap {
        Gap { map: OrdMap { x, y, n, m: 2, map: (0..n).map(|i| usize::from(i >= cut)).collect() } }
    }

    pub fn cut(&self) -> usize {
        self.map.map.iter().filter(|&&v| v == 0).count()
    }

    /// Position in the linear order of gaps.
    pub fn index(&self) -> usize {
        self.cut() - self.map.x
    }
}

/// Valid cuts of gaps in `⟨n⟩`.
fn cuts(x: usize, y: usize, n: usize) -> std::ops::RangeInclusive<usize> {
    if n + 1 < x + y {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    x..=n - y
}

/// The gaps of `⟨n⟩`, ordered by inclusion of `g⁻¹(0)`.
pub fn gaps_of(x: usize, y: usize, n: usize) -> Vec<Gap> {
    if !is_ordinal(x, y, n) {
        return Vec::new();
    }
    cuts(x, y, n).map(|c| Gap::from_cut(x, y, n, c)).collect()
}

/// Precomposition `g ↦ g ∘ f`, a map of `(1−x, 1−y)`-ordinals from the gaps
/// of `⟨m⟩` to the gaps of `⟨n⟩`, indexed by position in the gap order.
pub fn gap_dual(f: &OrdMap) -> OrdMap {
    let (x, y) = (f.x, f.y);
    let map = cuts(x, y, f.m).map(|c| f.map.iter().filter(|&&v| v < c).count() - x).collect();
    OrdMap { x: 1 - x, y: 1 - y, n: f.m + 1 - x - y, m: f.n + 1 - x - y, map }
}

/// Outcome of [`check_gap_duality`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DualityReport {
    pub maps_checked: usize,
    pub compositions_checked: usize,
    pub failures: Vec<String>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for ordinals of size at most `max_size` in every `Δ_{x,y}`:
/// `|gaps(⟨n⟩)| = n + 1 − x − y`; `gap_dual` is a bijection of hom sets onto
/// the opposite hom sets of `Δ_{1−x,1−y}`; it reverses composition and
/// preserves identities; and the double dual is the original map under the
/// canonical identification of `⟨n⟩` with the gaps of its gaps.
pub fn check_gap_duality(max_size: usize) -> DualityReport {
    let mut r = DualityReport::default();
    for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let sizes: Vec<usize> = (0..=max_size).filter(|&n| is_ordinal(x, y, n)).collect();
        let homs: HashMap<(usize, usize), Vec<OrdMap>> = sizes
            .iter()
            .flat_map(|&n| sizes.iter().map(move |&m| (n, m)))
            .map(|(n, m)| ((n, m), raw_maps(x, y, n, m).into_iter().map(|map| OrdMap { x, y, n, m, map }).collect()))
            .collect();
        for &n in &sizes {
            let count = gaps_of(x, y, n).len();
            if count + x + y != n + 1 {
                r.failures.push(format!("({x},{y}): ⟨{n}⟩ has {count} gaps"));
            }
            if gap_dual(&OrdMap::identity(x, y, n)) != OrdMap::identity(1 - x, 1 - y, count) {
                r.failures.push(format!("({x},{y}): dual of id⟨{n}⟩ is not an identity"));
            }
        }
        for &n in &sizes {
            for &m in &sizes {
                let hom = &homs[&(n, m)];
                let (gn, gm) = (n + 1 - x - y, m + 1 - x - y);
                let opposite = raw_maps(1 - x, 1 - y, gm, gn).len();
                let duals: BTreeSet<Vec<usize>> = hom.iter().map(|f| gap_dual(f).map).collect();
                if duals.len() != hom.len() || opposite != hom.len() {
                    r.failures.push(format!("({x},{y}): duality is not bijective on Hom(⟨{n}⟩, ⟨{m}⟩)"));
                }
                for f in hom {
                    r.maps_checked += 1;
                    let d = gap_dual(f);
                    if d.validate().is_err() {
                        r.failures.push(format!(
                            "({x},{y}): dual of {:?} is not a map of ({},{})-ordinals",
                            f.map,
                            1 - x,
                            1 - y
                        ));
                    } else if gap_dual(&d) != *f {
                        r.failures.push(format!("({x},{y}): double dual of {:?} differs", f.map));
                    }
                }
                for &k in &sizes {
                    for f in hom {
                        for g in &homs[&(m, k)] {
                            r.compositions_checked += 1;
                            let gf = f.then(g).expect("composable");
                            if gap_dual(&gf) != gap_dual(g).then(&gap_dual(f)).expect("composable duals") {
                                r.failures
                                    .push(format!("({x},{y}): dual of {:?} ∘ {:?} is not reversed", g.map, f.map));
                            }
                        }
                    }
                }
            }
        }
    }
    r
}

/// A decorated ordinal: an optional gap (by cut) and an optional point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decorated {
    pub n: usize,
    pub cut: Option<usize>,
    pub point: Option<usize>,
}

/// A split ordinal: the point is the least element of `g⁻¹(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SplitOrdinal {
    pub n: usize,
    pub gap_cut: usize,
    pub point: usize,
}

impl SplitOrdinal {
    pub fn new(n: usize, gap_cut: usize) -> Option<SplitOrdinal> {
        (gap_cut < n).then_some(SplitOrdinal { n, gap_cut, point: gap_cut })
    }

    pub fn decorated(&self) -> Decorated {
        Decorated { n: self.n, cut: Some(self.gap_cut), point: Some(self.point) }
    }
}

/// Kinds of decorated ordinals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Gapped,
    Pointed,
    Split,
}

impl Kind {
    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "gp" => Some(Kind::Gapped),
            "pt" => Some(Kind::Pointed),
            "spl" => Some(Kind::Split),
            _ => None,
        }
    }
}

/// All decorated `(x, y)`-ordinals of the given kind with at most `bound`
/// elements.
pub fn decorated_ordinals(kind: Kind, x: usize, y: usize, bound: usize) -> Vec<Decorated> {
    let mut out = Vec::new();
    for n in 0..=bound {
        if !is_ordinal(x, y, n) {
            continue;
        }
        match kind {
            Kind::Gapped => out.extend(cuts(x, y, n).map(|c| Decorated { n, cut: Some(c), point: None })),
            Kind::Pointed => out.extend((0..n).map(|i| Decorated { n, cut: None, point: Some(i) })),
            Kind::Split => {
                out.extend(cuts(x, y, n).filter(|&c| c < n).map(|c| Decorated { n, cut: Some(c), point: Some(c) }))
            }
        }
    }
    out
}

/// Whether `f` is a map of decorated `(x, y)`-ordinals `s → t`.
pub fn is_decorated_map(x: usize, y: usize, s: &Decorated, t: &Decorated, f: &[usize]) -> bool {
    if !is_ord_map(x, y, s.n, t.n, f) {
        return false;
    }
    if let (Some(c), Some(c2)) = (s.cut, t.cut) {
        if (0..s.n).any(|i| (i < c) != (f[i] < c2)) {
            return false;
        }
    }
    if let (Some(p), Some(p2)) = (s.point, t.point) {
        if f[p] != p2 {
            return false;
        }
    }
    true
}

/// All decorated maps `s → t`.
pub fn decorated_maps(x: usize, y: usize, s: &Decorated, t: &Decorated) -> Vec<Vec<usize>> {
    raw_maps(x, y, s.n, t.n).into_iter().filter(|f| is_decorated_map(x, y, s, t, f)).collect()
}

/// The left adjoint of `Δ_spl → Δ_gp`: inserts a new point `a` between
/// `g⁻¹(0)` and `g⁻¹(1)`. Returns the split ordinal and the unit
/// `⟨n⟩ → ⟨n⟩ ∪ {a}`.
pub fn split_free(gap: &Gap) -> (SplitOrdinal, OrdMap) {
    let (n, c) = (gap.map.n, gap.cut());
    let unit = (0..n).map(|i| if i < c { i } else { i + 1 }).collect();
    (SplitOrdinal { n: n + 1, gap_cut: c, point: c }, OrdMap { x: gap.map.x, y: gap.map.y, n, m: n + 1, map: unit })
}

/// The right adjoint of `Δ_spl → Δ_pt`: inserts a new point `b` just above
/// `j`. Returns the split ordinal and the counit collapsing `b` onto `j`.
pub fn split_cofree(x: usize, y: usize, m: usize, j: usize) -> (SplitOrdinal, OrdMap) {
    let counit = (0..=m).map(|k| if k <= j { k } else { k - 1 }).collect();
    (SplitOrdinal { n: m + 1, gap_cut: j + 1, point: j + 1 }, OrdMap { x, y, n: m + 1, m, map: counit })
}

fn free_obj(d: &Decorated) -> Decorated {
    let c = d.cut.expect("gapped");
    Decorated { n: d.n + 1, cut: Some(c), point: Some(c) }
}

fn free_map(s: &Decorated, t: &Decorated, f: &[usize]) -> Vec<usize> {
    let (c, c2) = (s.cut.expect("gapped"), t.cut.expect("gapped"));
    let mut out = Vec::with_capacity(s.n + 1);
    out.extend(f[..c].iter().copied());
    out.push(c2);
    out.extend(f[c..].iter().map(|&v| v + 1));
    out
}

fn cofree_obj(d: &Decorated) -> Decorated {
    let j = d.point.expect("pointed");
    Decorated { n: d.n + 1, cut: Some(j + 1), point: Some(j + 1) }
}

fn cofree_map(s: &Decorated, t: &Decorated, f: &[usize]) -> Vec<usize> {
    let (j, j2) = (s.point.expect("pointed"), t.point.expect("pointed"));
    let lift_low = |v: usize| if v <= j2 { v } else { v + 1 };
    let lift_high = |v: usize| if v == j2 { j2 + 1 } else { lift_low(v) };
    let mut out: Vec<usize> = f[..=j].iter().map(|&v| lift_low(v)).collect();
    out.push(j2 + 1);
    out.extend(f[j + 1..].iter().map(|&v| lift_high(v)));
    out
}

fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    f.iter().map(|&i| g[i]).collect()
}

fn forget_point(d: &Decorated) -> Decorated {
    Decorated { point: None, ..*d }
}

fn forget_gap(d: &Decorated) -> Decorated {
    Decorated { cut: None, ..*d }
}

/// Outcome of [`check_split_adjunctions`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SplitAdjunctionReport {
    pub objects_checked: usize,
    pub morphisms_checked: usize,
    pub failures: Vec<String>,
}

impl SplitAdjunctionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `split_free ⊣ forget` and `forget ⊣ split_cofree` on all objects
/// with at most `max_size` elements: units and counits are decorated maps,
/// both triangle identities hold, both are natural on every morphism between
/// such objects, and the universal properties hold (unique factorization).
pub fn check_split_adjunctions(x: usize, y: usize, max_size: usize) -> SplitAdjunctionReport {
    let mut r = SplitAdjunctionReport::default();
    let gp = decorated_ordinals(Kind::Gapped, x, y, max_size);
    let pt = decorated_ordinals(Kind::Pointed, x, y, max_size);
    let spl = decorated_ordinals(Kind::Split, x, y, max_size);
    let id = |n: usize| -> Vec<usize> { (0..n).collect() };
    let free_unit = |c: &Decorated| split_free(&Gap::from_cut(x, y, c.n, c.cut.expect("gapped"))).1.map;
    let free_counit = |s: &Decorated| {
        let c = s.cut.expect("split");
        (0..=s.n).map(|k| if k <= c { k } else { k - 1 }).collect::<Vec<_>>()
    };
    let cofree_counit = |p: &Decorated| split_cofree(x, y, p.n, p.point.expect("pointed")).1.map;
    let cofree_unit = |s: &Decorated| {
        let c = s.point.expect("split");
        (0..s.n).map(|k| if k < c { k } else { k + 1 }).collect::<Vec<_>>()
    };
    let fail = |r: &mut SplitAdjunctionReport, msg: String| r.failures.push(msg);

    // free ⊣ forget: Δ_gp ⇄ Δ_spl
    for c in &gp {
        r.objects_checked += 1;
        let fc = free_obj(c);
        let eta = free_unit(c);
        if !is_decorated_map(x, y, c, &forget_point(&fc), &eta) {
            fail(&mut r, format!("unit at gapped {c:?} is not a gapped map"));
            continue;
        }
        // ε_{Fc} ∘ F(η_c) = id
        let f_eta = free_map(c, &forget_point(&fc), &eta);
        if compose(&f_eta, &free_counit(&fc)) != id(fc.n) {
            fail(&mut r, format!("left triangle fails at gapped {c:?}"));
        }
        for s in spl.iter().filter(|s| s.n <= max_size) {
            // universal property: every gapped c → U(s) factors uniquely through η_c
            for h in decorated_maps(x, y, c, &forget_point(s)) {
                let lifts = decorated_maps(x, y, &fc, s).into_iter().filter(|k| compose(&eta, k) == h).count();
                if lifts != 1 {
                    fail(&mut r, format!("{lifts} split lifts of {h:?}: {c:?} → {s:?}"));
                }
            }
        }
    }
    for s in &spl {
        r.objects_checked += 1;
        let us = forget_point(s);
        let eps = free_counit(s);
        if !is_decorated_map(x, y, &free_obj(&us), s, &eps) {
            fail(&mut r, format!("counit at split {s:?} is not a split map"));
            continue;
        }
        // U(ε_s) ∘ η_{Us} = id
        if compose(&free_unit(&us), &eps) != id(s.n) {
            fail(&mut r, format!("right triangle fails at split {s:?}"));
        }
    }
    for c in &gp {
        for c2 in &gp {
            for f in decorated_maps(x, y, c, c2) {
                r.morphisms_checked += 1;
                let (fc, fc2) = (free_obj(c), free_obj(c2));
                let ff = free_map(c, c2, &f);
                if !is_decorated_map(x, y, &fc, &fc2, &ff) {
                    fail(&mut r, format!("free image of {f:?} is not a split map"));
                } else if compose(&free_unit(c), &ff) != compose(&f, &free_unit(c2)) {
                    fail(&mut r, format!("unit is not natural at {f:?}"));
                }
            }
        }
    }
    for s in &spl {
        for s2 in &spl {
            for k in decorated_maps(x, y, s, s2) {
                r.morphisms_checked += 1;
                let fk = free_map(&forget_point(s), &forget_point(s2), &k);
                if compose(&free_counit(s), &k) != compose(&fk, &free_counit(s2)) {
                    fail(&mut r, format!("counit is not natural at {k:?}"));
                }
                let ck = cofree_map(&forget_gap(s), &forget_gap(s2), &k);
                if compose(&k, &cofree_unit(s2)) != compose(&cofree_unit(s), &ck) {
                    fail(&mut r, format!("cofree unit is not natural at {k:?}"));
                }
            }
        }
    }

    // forget ⊣ cofree: Δ_spl ⇄ Δ_pt
    for p in &pt {
        r.objects_checked += 1;
        let gp_ = cofree_obj(p);
        let eps = cofree_counit(p);
        if !is_decorated_map(x, y, &forget_gap(&gp_), p, &eps) {
            fail(&mut r, format!("counit at pointed {p:?} is not a pointed map"));
            continue;
        }
        // G(ε_p) ∘ η_{Gp} = id
        let g_eps = cofree_map(&forget_gap(&gp_), p, &eps);
        if compose(&cofree_unit(&gp_), &g_eps) != id(gp_.n) {
            fail(&mut r, format!("right triangle fails at pointed {p:?}"));
        }
        for s in &spl {
            // universal property: every pointed U(s) → p factors uniquely through ε_p
            for h in decorated_maps(x, y, &forget_gap(s), p) {
                let lifts = decorated_maps(x, y, s, &gp_).into_iter().filter(|k| compose(k, &eps) == h).count();
                if lifts != 1 {
                    fail(&mut r, format!("{lifts} split lifts of {h:?}: {s:?} → {p:?}"));
                }
            }
        }
    }
    for s in &spl {
        let eta = cofree_unit(s);
        let cs = cofree_obj(&forget_gap(s));
        if !is_decorated_map(x, y, s, &cs, &eta) {
            fail(&mut r, format!("cofree unit at split {s:?} is not a split map"));
            continue;
        }
        // ε_{Us} ∘ U(η_s) = id
        if compose(&eta, &cofree_counit(&forget_gap(s))) != id(s.n) {
            fail(&mut r, format!("left triangle fails at split {s:?}"));
        }
    }
    for p in &pt {
        for p2 in &pt {
            for f in decorated_maps(x, y, p, p2) {
                r.morphisms_checked += 1;
                let (gp1, gp2) = (cofree_obj(p), cofree_obj(p2));
                let gf = cofree_map(p, p2, &f);
                if !is_decorated_map(x, y, &gp1, &gp2, &gf) {
                    fail(&mut r, format!("cofree image of {f:?} is not a split map"));
                } else if compose(&gf, &cofree_counit(p2)) != compose(&cofree_counit(p), &f) {
                    fail(&mut r, format!("cofree counit is not natural at {f:?}"));
                }
            }
        }
    }
    r
}

/// Checks that the concatenation functors onto gapped, pointed and split
/// ordinals are inverse to the decompositions `(g⁻¹(0), g⁻¹(1))`,
/// `({≤ i}, {≥ i})` and `(g⁻¹(0), {≥ i})` on objects and morphisms of size at
/// most `max_size`. Returns the failures.
pub fn check_point_gap_equivalences(x: usize, y: usize, max_size: usize) -> Vec<String> {
    let mut failures = Vec::new();
    let sizes = |a: usize, b: usize| (0..=max_size).filter(move |&n| is_ordinal(a, b, n));
    // (component ordinal types, middle parameter, decoration of the result)
    let shapes: [(usize, usize, usize, Kind); 3] =
        [(0, 0, 0, Kind::Gapped), (1, 1, 1, Kind::Pointed), (0, 1, 0, Kind::Split)];
    for (ly, rx, mid, kind) in shapes {
        let decorate = |n: usize, total: usize| match kind {
            Kind::Gapped => Decorated { n: total, cut: Some(n), point: None },
            Kind::Pointed => Decorated { n: total, cut: None, point: Some(n - 1) },
            Kind::Split => Decorated { n: total, cut: Some(n), point: Some(n) },
        };
        let split_sizes = |d: &Decorated| match kind {
            Kind::Gapped => (d.cut.unwrap(), d.n - d.cut.unwrap()),
            Kind::Pointed => (d.point.unwrap() + 1, d.n - d.point.unwrap()),
            Kind::Split => (d.cut.unwrap(), d.n - d.point.unwrap()),
        };
        // split shape inserts the middle ⟨1⟩ through ⊗₀ then ⊗₁
        let glue = |f: &OrdMap, g: &OrdMap| -> OrdMap {
            if kind == Kind::Split {
                let one = OrdMap::identity(0, 1, 1);
                tensor(1, &tensor(0, f, &one).expect("⊗₀"), g).expect("⊗₁")
            } else {
                tensor(mid, f, g).expect("matching parameters")
            }
        };
        let objs: Vec<(usize, usize)> = sizes(x, ly).flat_map(|n| sizes(rx, y).map(move |m| (n, m))).collect();
        for &(n, m) in &objs {
            let total = glue(&OrdMap::identity(x, ly, n), &OrdMap::identity(rx, y, m)).n;
            if total > max_size {
                continue;
            }
            let d = decorate(n, total);
            if !decorated_ordinals(kind, x, y, max_size).contains(&d) {
                failures.push(format!("{kind:?}: ({n},{m}) does not give a decorated ordinal"));
                continue;
            }
            if split_sizes(&d) != (n, m) {
                failures.push(format!("{kind:?}: ({n},{m}) does not round-trip"));
            }
            for &(n2, m2) in &objs {
                let total2 = glue(&OrdMap::identity(x, ly, n2), &OrdMap::identity(rx, y, m2)).n;
                if total2 > max_size {
                    continue;
                }
                let d2 = decorate(n2, total2);
                let mut glued = BTreeSet::new();
                for f in raw_maps(x, ly, n, n2) {
                    for g in raw_maps(rx, y, m, m2) {
                        let h = glue(
                            &OrdMap { x, y: ly, n, m: n2, map: f.clone() },
                            &OrdMap { x: rx, y, n: m, m: m2, map: g.clone() },
                        );
                        if !is_decorated_map(x, y, &d, &d2, &h.map) {
                            failures.push(format!("{kind:?}: glued map {:?} is not decorated", h.map));
                        }
                        glued.insert(h.map);
                    }
                }
                let all: BTreeSet<Vec<usize>> = decorated_maps(x, y, &d, &d2).into_iter().collect();
                if glued != all {
                    failures.push(format!("{kind:?}: maps ({n},{m}) → ({n2},{m2}) are not in bijection"));
                }
            }
        }
    }
    failures
}

/// The bipartite compatibility graph of `σ`: gaps of `⟨n⟩` on one side,
/// elements of `⟨m⟩` on the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatGraph {
    pub sigma: OrdMap,
    pub gaps: Vec<Gap>,
    /// Pairs `(gap index, j)` with `j` compatible with the gap.
    pub edges: Vec<(usize, usize)>,
}

/// Summary statistics of a [`CompatGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatStats {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub is_tree: bool,
    pub point_valency: Vec<usize>,
    pub expected_point_valency: Vec<usize>,
}

impl CompatStats {
    pub fn counts_match(&self, s: &OrdMap) -> bool {
        self.vertices + s.x + s.y == s.m + s.n + 1 && self.edges + s.x + s.y == s.m + s.n
    }

    pub fn valency_matches(&self) -> bool {
        self.point_valency == self.expected_point_valency
    }
}

/// Whether `j` is compatible with the gap: every `i` with `σ(i) < j` lies
/// below the gap and every `i` with `σ(i) > j` above it.
pub fn is_compatible(sigma: &OrdMap, gap: &Gap, j: usize) -> bool {
    sigma.map.iter().zip(&gap.map.map).all(|(&s, &g)| (s >= j || g == 0) && (s <= j || g == 1))
}

pub fn compat_graph(sigma: &OrdMap) -> CompatGraph {
    let gaps = gaps_of(sigma.x, sigma.y, sigma.n);
    let edges = gaps
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| (0..sigma.m).filter(|&j| is_compatible(sigma, g, j)).map(move |j| (gi, j)))
        .collect();
    CompatGraph { sigma: sigma.clone(), gaps, edges }
}

/// The valency of `j ∈ ⟨m⟩`: `|σ⁻¹(j)| + 1` when `x ≤ j ≤ m − 1 − y`,
/// `|σ⁻¹(j)| − 1` when `j = 0` and `x = y = m = 1`, and `|σ⁻¹(j)|` otherwise.
pub fn expected_valency(sigma: &OrdMap, j: usize) -> usize {
    let e = sigma.fiber_size(j);
    let (x, y, m) = (sigma.x, sigma.y, sigma.m);
    if x <= j && j + 1 + y <= m {
        e + 1
    } else if j == 0 && x == 1 && y == 1 && m == 1 {
        e - 1
    } else {
        e
    }
}

impl CompatGraph {
    pub fn stats(&self) -> CompatStats {
        let (ng, m) = (self.gaps.len(), self.sigma.m);
        let vertices = ng + m;
        let mut adj = vec![Vec::new(); vertices];
        let mut point_valency = vec![0; m];
        for &(g, j) in &self.edges {
            adj[g].push(ng + j);
            adj[ng + j].push(g);
            point_valency[j] += 1;
        }
        let mut seen = vec![false; vertices];
        let mut reached = 0;
        if vertices > 0 {
            let mut queue = VecDeque::from([0]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                reached += 1;
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let connected = reached == vertices;
        let edges = self.edges.len();
        CompatStats {
            vertices,
            edges,
            connected,
            is_tree: connected && edges + 1 == vertices,
            point_valency,
            expected_point_valency: (0..m).map(|j| expected_valency(&self.sigma, j)).collect(),
        }
    }
}

/// One row of [`adjunction_sweep`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub sigma: OrdMap,
    pub stats: CompatStats,
}

impl SweepRow {
    pub fn ok(&self) -> bool {
        self.stats.is_tree && self.stats.counts_match(&self.sigma) && self.stats.valency_matches()
    }
}

/// Compatibility graphs of every map `⟨n⟩ → ⟨m⟩` in every `Δ_{x,y}` with
/// `n, m ≤ max_size`, in the order `(x, y, n, m, σ)`.
pub fn adjunction_sweep(max_size: usize) -> Result<Vec<SweepRow>, AdjError> {
    let mut rows = Vec::new();
    for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        for n in 0..=max_size {
            for m in 0..=max_size {
                if !is_ordinal(x, y, n) || !is_ordinal(x, y, m) {
                    continue;
                }
                for sigma in ordinal_homs(x, y, n, m)? {
                    let stats = compat_graph(&sigma).stats();
                    rows.push(SweepRow { sigma, stats });
                }
            }
        }
    }
    Ok(rows)
}

/// An object of `Tw(Δ_kind)_{/σ}`: a decorated map `τ: L → K` with
/// undecorated `φ: ⟨n⟩ → L` and `ψ: K → ⟨m⟩` such that `ψ ∘ τ ∘ φ = σ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CommaObject {
    pub source: Decorated,
    pub target: Decorated,
    pub tau: Vec<usize>,
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
}

/// The discrete invariant of a comma object: the pulled-back gap `φ*g`, the
/// image point `ψ(j)`, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CommaInvariant {
    pub gap_cut: Option<usize>,
    pub point: Option<usize>,
}

impl CommaObject {
    pub fn invariant(&self) -> CommaInvariant {
        CommaInvariant {
            gap_cut: self.source.cut.map(|c| self.phi.iter().filter(|&&v| v < c).count()),
            point: self.target.point.map(|j| self.psi[j]),
        }
    }

    fn name(&self) -> String {
        let deco = |d: &Decorated| {
            let mut s = format!("⟨{}⟩", d.n);
            if let Some(c) = d.cut {
                s += &format!("g{c}");
            }
            if let Some(p) = d.point {
                s += &format!("p{p}");
            }
            s
        };
        format!("{:?}:{}→{}|{:?}|{:?}", self.tau, deco(&self.source), deco(&self.target), self.phi, self.psi)
    }
}

fn comma_objects(kind: Kind, sigma: &OrdMap, bound: usize, ceiling: usize) -> Result<Vec<CommaObject>, AdjError> {
    let (x, y) = (sigma.x, sigma.y);
    let decos = decorated_ordinals(kind, x, y, bound);
    let mut out = Vec::new();
    let mut phis: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    let mut psis: HashMap<usize, Vec<Vec<usize>>> = HashMap::new();
    for s in &decos {
        let phi_s = phis.entry(s.n).or_insert_with(|| raw_maps(x, y, sigma.n, s.n)).clone();
        for t in &decos {
            let psi_t = psis.entry(t.n).or_insert_with(|| raw_maps(x, y, t.n, sigma.m)).clone();
            for tau in decorated_maps(x, y, s, t) {
                for psi in &psi_t {
                    let pt = compose(&tau, psi);
                    for phi in &phi_s {
                        if phi.iter().zip(&sigma.map).all(|(&i, &v)| pt[i] == v) {
                            out.push(CommaObject {
                                source: *s,
                                target: *t,
                                tau: tau.clone(),
                                phi: phi.clone(),
                                psi: psi.clone(),
                            });
                            if out.len() > ceiling {
                                return Err(AdjError::BoundExceeded {
                                    what: "comma objects".into(),
                                    value: out.len(),
                                    limit: ceiling,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Tw(Δ_kind)_{/σ}` restricted to objects whose ordinals all have at most
/// `bound` elements. A morphism `(v, u)` from `(τ, φ, ψ)` to `(τ', φ', ψ')`
/// is a pair of decorated maps `v: L' → L`, `u: K → K'` with `τ' = u τ v`,
/// `φ = v φ'` and `ψ = ψ' u`.
#[derive(Debug, Clone)]
pub struct CommaTruncation {
    pub kind: Kind,
    pub sigma: OrdMap,
    pub objects: Vec<CommaObject>,
    pub invariants: Vec<CommaInvariant>,
    /// Morphisms as `(source, target, v, u)`.
    pub morphisms: Vec<(usize, usize, Vec<usize>, Vec<usize>)>,
    pub bound: usize,
}

impl CommaTruncation {
    /// Index of the object with the given data, if present.
    pub fn find(&self, o: &CommaObject) -> Option<Obj> {
        self.objects.iter().position(|p| p == o)
    }

    /// `|Hom(a, b)|` for all pairs, keyed sparsely.
    pub fn hom_sizes(&self) -> HashMap<(usize, usize), usize> {
        let mut h = HashMap::new();
        for &(a, b, _, _) in &self.morphisms {
            *h.entry((a, b)).or_insert(0) += 1;
        }
        h
    }

    /// Connected components, each sorted, ordered by least element.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.objects.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut v: usize) -> usize {
            while p[v] != v {
                p[v] = p[p[v]];
                v = p[v];
            }
            v
        }
        for &(a, b, _, _) in &self.morphisms {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for v in 0..n {
            let r = root(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Whether `d` has exactly one morphism from every object of `among`.
    pub fn is_terminal_among(&self, d: usize, among: &[usize]) -> bool {
        let h = self.hom_sizes();
        among.iter().all(|&o| h.get(&(o, d)) == Some(&1))
    }

    /// Whether `d` has exactly one morphism to every object of `among`.
    pub fn is_initial_among(&self, d: usize, among: &[usize]) -> bool {
        let h = self.hom_sizes();
        among.iter().all(|&o| h.get(&(d, o)) == Some(&1))
    }

    /// Materializes the truncation as a finite category; fails when it has
    /// more than `ceiling` morphisms.
    pub fn category(&self, ceiling: usize) -> Result<FinCategory, AdjError> {
        if self.morphisms.len() > ceiling {
            return Err(AdjError::BoundExceeded {
                what: "comma morphisms".into(),
                value: self.morphisms.len(),
                limit: ceiling,
            });
        }
        let index: HashMap<(usize, usize, &[usize], &[usize]), usize> = self
            .morphisms
            .iter()
            .enumerate()
            .map(|(i, (a, b, v, u))| ((*a, *b, v.as_slice(), u.as_slice()), i))
            .collect();
        let ids = self
            .objects
            .iter()
            .enumerate()
            .map(|(a, o)| {
                let (v, u): (Vec<usize>, Vec<usize>) = ((0..o.source.n).collect(), (0..o.target.n).collect());
                index[&(a, a, v.as_slice(), u.as_slice())]
            })
            .collect();
        let mors = self.morphisms.iter().map(|(a, b, v, u)| (format!("({v:?},{u:?}):{a}→{b}"), *a, *b)).collect();
        let names = self.objects.iter().map(CommaObject::name).collect();
        let m = &self.morphisms;
        Ok(FinCategory::from_parts(names, mors, ids, |g, f| {
            let ((fa, _, fv, fu), (_, gb, gv, gu)) = (&m[f], &m[g]);
            let (v, u) = (compose(gv, fv), compose(fu, gu));
            index[&(*fa, *gb, v.as_slice(), u.as_slice())]
        }))
    }
}

/// Builds the bounded comma category; fails when it has more than `ceiling`
/// objects or `64 · ceiling` morphisms.
pub fn comma_truncated(kind: Kind, sigma: &OrdMap, bound: usize, ceiling: usize) -> Result<CommaTruncation, AdjError> {
    sigma.validate()?;
    if bound < sigma.n.max(sigma.m) {
        return Err(AdjError::Invalid(format!("bound {bound} is below the sizes of σ")));
    }
    let (x, y) = (sigma.x, sigma.y);
    let objects = comma_objects(kind, sigma, bound, ceiling)?;
    let decos = decorated_ordinals(kind, x, y, bound);
    let mut by_key: HashMap<(Decorated, Decorated, &[usize]), Vec<usize>> = HashMap::new();
    for (i, o) in objects.iter().enumerate() {
        by_key.entry((o.source, o.target, o.tau.as_slice())).or_default().push(i);
    }
    let mut maps_cache: HashMap<(Decorated, Decorated), Vec<Vec<usize>>> = HashMap::new();
    for s in &decos {
        for t in &decos {
            maps_cache.insert((*s, *t), decorated_maps(x, y, s, t));
        }
    }
    let limit = ceiling.saturating_mul(64);
    let mut morphisms = Vec::new();
    for (a, oa) in objects.iter().enumerate() {
        for lb in &decos {
            for v in &maps_cache[&(*lb, oa.source)] {
                let vt = compose(v, &oa.tau);
                for kb in &decos {
                    for u in &maps_cache[&(oa.target, *kb)] {
                        let tau_b = compose(&vt, u);
                        let Some(cands) = by_key.get(&(*lb, *kb, tau_b.as_slice())) else { continue };
                        for &b in cands {
                            let ob = &objects[b];
                            if compose(&ob.phi, v) == oa.phi && compose(u, &ob.psi) == oa.psi {
                                morphisms.push((a, b, v.clone(), u.clone()));
                                if morphisms.len() > limit {
                                    return Err(AdjError::BoundExceeded {
                                        what: "comma morphisms".into(),
                                        value: morphisms.len(),
                                        limit,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let invariants = objects.iter().map(CommaObject::invariant).collect();
    Ok(CommaTruncation { kind, sigma: sigma.clone(), objects, invariants, morphisms, bound })
}

/// The object of `Tw(Δ_gp)_{/σ}` given by `id: (⟨n⟩, g') → (⟨n⟩, g')` with
/// `φ = id`, `ψ = σ`; initial among objects with invariant `g'` and `φ` an
/// isomorphism.
pub fn gapped_designated(sigma: &OrdMap, cut: usize) -> CommaObject {
    let d = Decorated { n: sigma.n, cut: Some(cut), point: None };
    CommaObject {
        source: d,
        target: d,
        tau: (0..sigma.n).collect(),
        phi: (0..sigma.n).collect(),
        psi: sigma.map.clone(),
    }
}

/// The object of `Tw(Δ_pt)_{/σ}` given by `σ: (⟨n⟩, i) → (⟨m⟩, j')` with
/// `φ = id`, `ψ = id` for `i` the least preimage of `j'`, if any.
pub fn pointed_designated(sigma: &OrdMap, j: usize) -> Option<CommaObject> {
    let i = sigma.map.iter().position(|&v| v == j)?;
    Some(CommaObject {
        source: Decorated { n: sigma.n, cut: None, point: Some(i) },
        target: Decorated { n: sigma.m, cut: None, point: Some(j) },
        tau: sigma.map.clone(),
        phi: (0..sigma.n).collect(),
        psi: (0..sigma.m).collect(),
    })
}

/// The object `Ψ_{(g', j')}` of `Tw(Δ_spl)_{/σ}`: the free split ordinal on
/// `(⟨n⟩, g')`, the cofree split ordinal on `(⟨m⟩, j')`, and `τ₀` sending the
/// new point `a` to `b`, agreeing with `σ` away from `σ⁻¹(j') ∩ g'⁻¹(1)` and
/// sending that set to `b`.
pub fn split_designated(sigma: &OrdMap, cut: usize, j: usize) -> CommaObject {
    let (x, y, n) = (sigma.x, sigma.y, sigma.n);
    let (free, unit) = split_free(&Gap::from_cut(x, y, n, cut));
    let (cofree, counit) = split_cofree(x, y, sigma.m, j);
    let lift = |v: usize| if v <= j { v } else { v + 1 };
    let mut tau = vec![0; free.n];
    for i in 0..n {
        tau[unit.map[i]] = if sigma.map[i] == j && i >= cut { j + 1 } else { lift(sigma.map[i]) };
    }
    tau[free.point] = cofree.point;
    CommaObject { source: free.decorated(), target: cofree.decorated(), tau, phi: unit.map, psi: counit.map }
}

/// Result of [`split_component_scan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentScan {
    pub objects: usize,
    /// Invariants realized by some object, sorted.
    pub invariants: Vec<CommaInvariant>,
    /// Objects with no morphism to the designated object of their class.
    pub unreached: usize,
}

/// Scans every object of the bounded `Tw(Δ_spl)_{/σ}` and exhibits the
/// unique morphism into `Ψ_{(g', j')}` for its invariant `(g', j')`.
/// Invariants are constant along morphisms, so the components of the
/// truncation are exactly the realized invariants when `unreached = 0`.
pub fn split_component_scan(sigma: &OrdMap, bound: usize, ceiling: usize) -> Result<ComponentScan, AdjError> {
    sigma.validate()?;
    let (x, y) = (sigma.x, sigma.y);
    let objects = comma_objects(Kind::Split, sigma, bound, ceiling)?;
    let mut invariants = BTreeSet::new();
    let mut unreached = 0;
    for o in &objects {
        let inv = o.invariant();
        invariants.insert(inv);
        let (cut, j) = (inv.gap_cut.expect("split"), inv.point.expect("split"));
        let target = split_designated(sigma, cut, j);
        // v: free → source is φ on ⟨n⟩ and sends a to the point
        let mut v = vec![0; target.source.n];
        for i in 0..sigma.n {
            v[target.phi[i]] = o.phi[i];
        }
        v[target.source.point.expect("split")] = o.source.point.expect("split");
        // u: target → cofree lifts ψ, sending gap-1 preimages of j' to b
        let h = o.target.cut.expect("split");
        let u: Vec<usize> = o
            .psi
            .iter()
            .enumerate()
            .map(|(t, &p)| {
                if p < j || (p == j && t < h) {
                    p
                } else if p == j {
                    j + 1
                } else {
                    p + 1
                }
            })
            .collect();
        let ok = is_decorated_map(x, y, &target.source, &o.source, &v)
            && is_decorated_map(x, y, &o.target, &target.target, &u)
            && compose(&target.phi, &v) == o.phi
            && compose(&u, &target.psi) == o.psi
            && compose(&compose(&v, &o.tau), &u) == target.tau;
        if !ok {
            unreached += 1;
        }
    }
    Ok(ComponentScan { objects: objects.len(), invariants: invariants.into_iter().collect(), unreached })
}

/// `E_σ` as sorted invariants `(cut, j)`.
pub fn compatible_pairs(sigma: &OrdMap) -> Vec<CommaInvariant> {
    let g = compat_graph(sigma);
    let mut out: Vec<CommaInvariant> =
        g.edges.iter().map(|&(gi, j)| CommaInvariant { gap_cut: Some(g.gaps[gi].cut()), point: Some(j) }).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{components, full_subcategory, is_terminal};
    use std::sync::Arc;

    #[test]
    fn hom_examples() {
        assert_eq!(ordinal_homs(0, 0, 1, 1).unwrap().len(), 1);
        assert_eq!(ordinal_homs(0, 0, 1, 2).unwrap().len(), 2);
        assert_eq!(ordinal_homs(1, 1, 2, 2).unwrap().len(), 1);
        assert!(matches!(ordinal_homs(0, 0, 40, 2), Err(AdjError::BoundExceeded { .. })));
        let homs = ordinal_homs(0, 0, 2, 3).unwrap();
        assert!(homs.windows(2).all(|w| w[0].map < w[1].map));
    }

    #[test]
    fn tensor_examples() {
        let one = OrdMap::identity(0, 0, 1);
        assert_eq!(tensor(0, &one, &one).unwrap().n, 2);
        let two = OrdMap::identity(1, 1, 2);
        assert_eq!(tensor(1, &two, &two).unwrap().n, 3);
        assert!(matches!(tensor(1, &one, &two), Err(AdjError::ParameterMismatch(_))));
        let f = OrdMap::new(0, 1, 3, vec![0, 2]).unwrap();
        let g = OrdMap::new(1, 0, 2, vec![0, 0, 1]).unwrap();
        let fg = tensor(1, &f, &g).unwrap();
        fg.validate().unwrap();
        assert_eq!(fg.map, vec![0, 2, 2, 3]);
    }

    #[test]
    fn gap_examples() {
        assert_eq!(gaps_of(0, 0, 1).len(), 2);
        assert_eq!(gaps_of(1, 0, 2).len(), 2);
        assert_eq!(gaps_of(1, 1, 2).len(), 1);
        let id = OrdMap::identity(0, 0, 3);
        assert_eq!(gap_dual(&id), OrdMap::identity(1, 1, 4));
        let f = OrdMap::new(0, 0, 3, vec![0, 2]).unwrap();
        let d = gap_dual(&f);
        d.validate().unwrap();
        assert_eq!(gap_dual(&d), f);
        let r = check_gap_duality(4);
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn split_examples() {
        let (s, unit) = split_free(&Gap::from_cut(0, 0, 0, 0));
        assert_eq!((s.n, s.point), (1, 0));
        assert!(unit.map.is_empty());
        let (s, unit) = split_free(&Gap::from_cut(0, 0, 2, 1));
        assert_eq!((s.n, s.gap_cut, s.point), (3, 1, 1));
        assert_eq!(unit.map, vec![0, 2]);
        let (s, counit) = split_cofree(0, 0, 2, 0);
        assert_eq!((s.n, s.point), (3, 1));
        assert_eq!(counit.map, vec![0, 0, 1]);
        for (x, y) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let r = check_split_adjunctions(x, y, 3);
            assert!(r.passed(), "{:?}", r.failures);
            assert!(check_point_gap_equivalences(x, y, 4).is_empty());
        }
    }

    #[test]
    fn compat_examples() {
        let s = compat_graph(&OrdMap::identity(0, 0, 1)).stats();
        assert_eq!((s.vertices, s.edges, s.is_tree), (3, 2, true));
        let s = compat_graph(&OrdMap::new(1, 0, 1, vec![0, 0]).unwrap()).stats();
        assert_eq!((s.vertices, s.edges, s.is_tree), (3, 2, true));
        assert!(adjunction_sweep(4).unwrap().iter().all(SweepRow::ok));
    }

    #[test]
    fn gapped_comma_has_initial_objects() {
        let sigma = OrdMap::identity(0, 0, 1);
        let t = comma_truncated(Kind::Gapped, &sigma, 3, DEFAULT_COMMA_CEILING).unwrap();
        let c = t.category(1 << 20).unwrap();
        c.validate().unwrap();
        assert_eq!(components(&c).len(), t.components().len());
        for cut in 0..=1 {
            let d = t.find(&gapped_designated(&sigma, cut)).unwrap();
            // among objects with φ an isomorphism and this invariant
            let sub: Vec<Obj> = (0..t.objects.len())
                .filter(|&o| t.invariants[o].gap_cut == Some(cut) && t.objects[o].source.n == sigma.n)
                .collect();
            assert!(t.is_initial_among(d, &sub));
        }
        assert_eq!(t.components().len(), 2);
    }

    #[test]
    fn split_comma_components() {
        let sigma = OrdMap::identity(0, 0, 1);
        let t = comma_truncated(Kind::Split, &sigma, 4, DEFAULT_COMMA_CEILING).unwrap();
        let comps = t.components();
        let pairs = compatible_pairs(&sigma);
        assert_eq!(comps.len(), pairs.len());
        for comp in &comps {
            let inv = t.invariants[comp[0]];
            assert!(comp.iter().all(|&o| t.invariants[o] == inv));
            let d = t.find(&split_designated(&sigma, inv.gap_cut.unwrap(), inv.point.unwrap())).unwrap();
            assert!(t.is_terminal_among(d, comp));
        }
        let small = comma_truncated(Kind::Split, &sigma, 3, DEFAULT_COMMA_CEILING).unwrap();
        let c = Arc::new(small.category(1 << 20).unwrap());
        c.validate().unwrap();
        for comp in components(&c) {
            let inv = small.invariants[comp[0]];
            let d = small.find(&split_designated(&sigma, inv.gap_cut.unwrap(), inv.point.unwrap())).unwrap();
            let (sub, _) = full_subcategory(&c, &comp);
            assert!(is_terminal(&sub, comp.iter().position(|&o| o == d).unwrap()));
        }
        let scan = split_component_scan(&sigma, 4, DEFAULT_COMMA_CEILING).unwrap();
        assert_eq!((scan.unreached, scan.invariants), (0, pairs));
    }

    #[test]
    fn pointed_comma_components() {
        let sigma = OrdMap::new(0, 0, 2, vec![1]).unwrap();
        let t = comma_truncated(Kind::Pointed, &sigma, 3, DEFAULT_COMMA_CEILING).unwrap();
        assert_eq!(t.components().len(), 2);
        assert!(pointed_designated(&sigma, 0).is_none());
        assert!(t.find(&pointed_designated(&sigma, 1).unwrap()).is_some());
    }
}
