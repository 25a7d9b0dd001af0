use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use tw2cat_cli::format::{
    AbDiagramDoc, CatValuedDoc, CategoryDoc, Document, Entity, FunctorDoc, MonoidDoc, OrdMapDoc, TwoCategoryDoc,
};
use tw2cat_cli::run;
use tw2cat_core::adj::OrdMap;
use tw2cat_core::cat::{twisted_arrow, FinCategory, FinFunctor};
use tw2cat_core::homology::AbPresentation;
use tw2cat_core::tw2::{b2, Monoid};
use tw2cat_core::two_cat::{from_one_category, product2};
use tw2cat_core::IntMatrix;

fn scratch(name: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("tw2cat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(format!("{}-{name}", COUNTER.fetch_add(1, Ordering::SeqCst)))
}

fn write(entity: Entity) -> PathBuf {
    let path = scratch("input.json");
    std::fs::write(&path, Document::new(entity).to_json()).unwrap();
    path
}

fn tw2cat(args: &[&str]) -> tw2cat_cli::Outcome {
    run(std::iter::once("tw2cat").chain(args.iter().copied()))
}

fn tw2cat_on(path: &Path, args: &[&str]) -> tw2cat_cli::Outcome {
    let p = path.to_str().unwrap();
    let mut full = args.to_vec();
    full.extend(["--input", p]);
    tw2cat(&full)
}

fn interval() -> FinCategory {
    FinCategory::ordinal(1)
}

fn functor(dom: &Arc<FinCategory>, cod: &Arc<FinCategory>, obj_map: Vec<usize>, mor_map: Vec<usize>) -> FinFunctor {
    let f = FinFunctor { dom: dom.clone(), cod: cod.clone(), obj_map, mor_map };
    f.validate().unwrap();
    f
}

/// `F: [1] → Cat` with `F(0) = F(1) = [1]` and `F(0 ≤ 1)` constant at `c`.
fn constant_action(c: usize) -> CatValuedDoc {
    let base = interval();
    let v = Arc::new(interval());
    let id = FinFunctor::identity(v.clone());
    let k = functor(&v, &v, vec![c, c], vec![if c == 0 { 0 } else { 2 }; 3]);
    CatValuedDoc::from_parts(&base, &[v.clone(), v.clone()], &[id.clone(), k, id])
}

#[test]
fn category_round_trip() {
    for c in [
        interval(),
        FinCategory::ordinal(3),
        (*twisted_arrow(&FinCategory::ordinal(2)).0.category).clone(),
        Monoid::cyclic(3).delooping(),
    ] {
        let doc = Document::new(Entity::Category(CategoryDoc::from_category(&c)));
        let back = Document::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let Entity::Category(cd) = back.entity else { panic!() };
        assert_eq!(cd.to_category().unwrap(), c);
    }
}

#[test]
fn two_category_round_trip() {
    let cases = [
        b2(&Monoid::cyclic(2)).unwrap(),
        from_one_category(&interval()),
        product2(&b2(&Monoid::cyclic(2)).unwrap(), &from_one_category(&interval())),
    ];
    for c in cases {
        let doc = Document::new(Entity::TwoCategory(TwoCategoryDoc::from_two_category(&c)));
        let back = Document::parse(&doc.to_json()).unwrap();
        assert_eq!(back, doc);
        let Entity::TwoCategory(cd) = back.entity else { panic!() };
        assert_eq!(cd.to_two_category().unwrap(), c);
    }
}

#[test]
fn small_entities_round_trip() {
    let a = Monoid::symmetric3();
    let doc = Document::new(Entity::Monoid(MonoidDoc::from_monoid(&a)));
    let Entity::Monoid(m) = Document::parse(&doc.to_json()).unwrap().entity else { panic!() };
    assert_eq!(m.to_monoid().unwrap(), a);

    let f = OrdMap::new(1, 0, 3, vec![0, 0, 2]).unwrap();
    let doc = Document::new(Entity::Ordmap(OrdMapDoc::from_ordmap(&f)));
    let Entity::Ordmap(o) = Document::parse(&doc.to_json()).unwrap().entity else { panic!() };
    assert_eq!(o.to_ordmap().unwrap(), f);

    let dom = Arc::new(FinCategory::terminal());
    let cod = Arc::new(interval());
    let inc = functor(&dom, &cod, vec![1], vec![2]);
    let doc = Document::new(Entity::Functor(FunctorDoc::from_functor(&inc)));
    let Entity::Functor(g) = Document::parse(&doc.to_json()).unwrap().entity else { panic!() };
    let g = g.to_functor().unwrap();
    assert_eq!((g.obj_map, g.mor_map), (inc.obj_map, inc.mor_map));
}

#[test]
fn diagram_and_cat_valued_round_trip() {
    let base = interval();
    let groups = [AbPresentation::free(2), AbPresentation::cyclic(4)];
    let maps = [IntMatrix::identity(2), IntMatrix::from_rows(&[vec![1, 3]], 2), IntMatrix::identity(1)];
    let doc = Document::new(Entity::AbDiagram(AbDiagramDoc::from_parts(&base, &groups, &maps).unwrap()));
    let back = Document::parse(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    let Entity::AbDiagram(d) = back.entity else { panic!() };
    let (b, g, m) = d.to_parts().unwrap();
    assert_eq!((b, g, m), (base, groups.to_vec(), maps.to_vec()));

    let doc = Document::new(Entity::CatValuedFunctor(constant_action(1)));
    let back = Document::parse(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    let Entity::CatValuedFunctor(f) = back.entity else { panic!() };
    let (_, f) = f.to_functor().unwrap();
    assert_eq!(f.values.len(), 2);
}

#[test]
fn rejects_bad_documents() {
    assert!(Document::parse(r#"{"format":"tw2cat/0","kind":"ordmap","x":0,"y":0,"n":0,"m":0,"map":[]}"#).is_err());
    let path = scratch("bad.json");
    // composition table missing a row
    std::fs::write(
        &path,
        r#"{"format":"tw2cat/1","kind":"category","objects":["a"],"morphisms":[{"id":"i","src":"a","dst":"a"}],"identities":[["a","i"]],"compose":[]}"#,
    )
    .unwrap();
    let out = tw2cat_on(&path, &["validate"]);
    assert_eq!(out.code, 2, "{}", out.stderr);
    assert_eq!(tw2cat(&["nerve"]).code, 2);
    assert_eq!(tw2cat(&["frobnicate"]).code, 2);
    assert_eq!(tw2cat(&["--help"]).code, 0);
}

#[test]
fn homology_of_bz2() {
    let path = write(Entity::Monoid(MonoidDoc::from_monoid(&Monoid::cyclic(2))));
    let out = tw2cat_on(&path, &["homology", "--max-dim", "4"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert_eq!(lines, ["H_0 = Z", "H_1 = Z/2", "H_2 = 0", "H_3 = Z/2"]);
}

#[test]
fn quillen_of_b2z2() {
    let c = b2(&Monoid::cyclic(2)).unwrap();
    let path = write(Entity::TwoCategory(TwoCategoryDoc::from_two_category(&c)));
    let out = tw2cat_on(
        &path,
        &["quillen", "--coeff", "const-Z", "--degrees", "-2..1", "--max-dim", "4", "--format", "json"],
    );
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    let groups: Vec<&str> =
        v["result"]["cohomology"].as_array().unwrap().iter().map(|g| g["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["Z", "0", "0", "Z/2"]);
    // too little dimension for degree 1
    let out = tw2cat_on(&path, &["quillen", "--max-dim", "3"]);
    assert_eq!(out.code, 3, "{}", out.stderr);
}

#[test]
fn sweep_summary() {
    let out = tw2cat(&["adj-sweep", "--max-size", "6"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("all σ verified: tree, counts match"));
}

#[test]
fn checks_pass() {
    assert_eq!(tw2cat(&["dual-check", "--max-size", "4"]).code, 0);
    assert_eq!(tw2cat(&["split-adjoint-check", "--max-size", "3"]).code, 0);
    assert_eq!(tw2cat(&["pi-check", "--max-size", "3"]).code, 0);
    let path = write(Entity::Monoid(MonoidDoc::from_monoid(&Monoid::cyclic(3))));
    assert_eq!(tw2cat_on(&path, &["pi-check", "--source", "1", "--target", "2"]).code, 0);
    let path = write(Entity::Ordmap(OrdMapDoc::from_ordmap(&OrdMap::identity(0, 0, 1))));
    for kind in ["gp", "pt", "spl"] {
        let out = tw2cat_on(&path, &["adj-comma", "--kind", kind]);
        assert_eq!(out.code, 0, "{kind}: {}{}", out.stdout, out.stderr);
    }
    assert_eq!(tw2cat_on(&path, &["adj-comma", "--kind", "spl", "--ceiling", "10"]).code, 3);
}

#[test]
fn coinitiality_exit_codes() {
    let dom = Arc::new(FinCategory::terminal());
    let cod = Arc::new(interval());
    let zero = write(Entity::Functor(FunctorDoc::from_functor(&functor(&dom, &cod, vec![0], vec![0]))));
    let one = write(Entity::Functor(FunctorDoc::from_functor(&functor(&dom, &cod, vec![1], vec![2]))));
    let out = tw2cat_on(&zero, &["coinitial"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("COINITIAL-CERTIFIED"));
    let out = tw2cat_on(&one, &["coinitial", "--format", "json"]);
    assert_eq!(out.code, 1);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"]["summary"]["witness"]["object"], "0");
    assert_eq!(v["result"]["summary"]["witness"]["group"], "0");
}

#[test]
fn grothendieck_commands() {
    let path = write(Entity::CatValuedFunctor(constant_action(0)));
    let out_path = scratch("groth.json");
    let out = tw2cat_on(&path, &["groth", "--output", out_path.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let total = Document::parse(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let Entity::TwoCategory(t) = total.entity else { panic!() };
    assert_eq!(t.to_two_category().unwrap().num_objects(), 4);
    assert_eq!(tw2cat_on(&path, &["opfibered"]).code, 0);
    // (0 ≤ 1, 0 ≤ 1) is not coCartesian, (0 ≤ 1, 0 ≤ 0) is
    let bad = tw2cat_on(&path, &["cocartesian", "--source", "(0,0)", "--target", "(1,1)", "--cell", "(0<=1,0<=1)"]);
    assert_eq!(bad.code, 1, "{}", bad.stderr);
    let good = tw2cat_on(&path, &["cocartesian", "--source", "(0,0)", "--target", "(1,0)", "--cell", "(0<=1,0<=0)"]);
    assert_eq!(good.code, 0, "{}", good.stderr);
}

#[test]
fn constructions_write_documents() {
    let path = write(Entity::Category(CategoryDoc::from_category(&interval())));
    let out_path = scratch("tw.json");
    assert_eq!(tw2cat_on(&path, &["tw", "--output", out_path.to_str().unwrap()]).code, 0);
    let Entity::Category(c) = Document::parse(&std::fs::read_to_string(&out_path).unwrap()).unwrap().entity else {
        panic!()
    };
    assert_eq!(c.to_category().unwrap().num_objects(), 3);
    let out = tw2cat_on(&path, &["tw2"]);
    assert!(out.stdout.contains("3 objects, 5 1-cells, 5 2-cells"), "{}", out.stdout);
    let m = write(Entity::Monoid(MonoidDoc::from_monoid(&Monoid::cyclic(2))));
    assert_eq!(tw2cat_on(&m, &["tw2", "--ceiling", "10"]).code, 3);
    assert_eq!(tw2cat_on(&m, &["two-nerve", "--max-dim", "3"]).code, 0);
    assert_eq!(tw2cat_on(&m, &["nerve"]).code, 0);
}

#[test]
fn derived_limits_of_a_diagram() {
    // ℤ² → ℤ along the sum map over [1]: the limit is ℤ², higher limits vanish
    let base = interval();
    let groups = [AbPresentation::free(2), AbPresentation::free(1)];
    let maps = [IntMatrix::identity(2), IntMatrix::from_rows(&[vec![1, 1]], 2), IntMatrix::identity(1)];
    let path = write(Entity::AbDiagram(AbDiagramDoc::from_parts(&base, &groups, &maps).unwrap()));
    assert_eq!(tw2cat_on(&path, &["validate"]).code, 0);
    let out = tw2cat_on(&path, &["dlim", "--max-dim", "3"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().skip(1).collect();
    assert_eq!(lines, ["R^0 lim = Z^2", "R^1 lim = 0", "R^2 lim = 0"]);
}

#[test]
fn reports_are_deterministic() {
    let c = b2(&Monoid::cyclic(2)).unwrap();
    let path = write(Entity::TwoCategory(TwoCategoryDoc::from_two_category(&c)));
    for args in [
        &["quillen", "--format", "json"][..],
        &["tw2"],
        &["two-nerve", "--max-dim", "3"],
        &["homology", "--max-dim", "3"],
    ] {
        let a = tw2cat_on(&path, args);
        let b = tw2cat_on(&path, args);
        assert_eq!(a, b);
    }
    assert_eq!(
        tw2cat(&["adj-sweep", "--max-size", "4", "--format", "json"]),
        tw2cat(&["adj-sweep", "--max-size", "4", "--format", "json"])
    );
}
