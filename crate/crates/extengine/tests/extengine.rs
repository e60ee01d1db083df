use extengine::cobar::{is_comodule, nu_chain, nu_hz_chain, nu_hz_module, nu_module};
use extengine::oracle::run_pair;
use extengine::*;
use steenrod::{Comodule, ModuleDef};

fn f2(n: usize) -> ModuleDef {
    ModuleDef::trivial(n)
}

fn def(level: i32, j: u32, over: usize) -> ModuleDef {
    ModuleDef::from_comodule(&Comodule::bg(level, j, over))
}

#[test]
fn algebras() {
    for (n, dim) in [(0, 2), (1, 8), (2, 64)] {
        let a = build_an(n).unwrap();
        assert_eq!(a.dim(), dim);
        assert!(a.is_connected() && a.is_graded());
        assert!(a.check_associative(5000));
    }
    assert_eq!(build_an(3).unwrap_err(), ExtError::Level(3));
    // Sq¹Sq¹ = 0, Sq¹Sq² = Sq³ = Sq(3), Sq²Sq² = Sq³Sq¹ = Sq(1,1).
    let a = build_an(1).unwrap();
    let idx = |s: &str| a.index_of(&steenrod::XiMonomial::parse(s).unwrap()).unwrap();
    assert_eq!(a.basis_mul(a.sq(0), a.sq(0)), 0);
    assert_eq!(a.basis_mul(a.sq(0), a.sq(1)), 1 << idx("xi1^3"));
    assert_eq!(a.basis_mul(a.sq(1), a.sq(1)), 1 << idx("xi1 xi2"));
    assert_eq!(a.basis_mul(a.sq(1), a.sq(0)), 1 << idx("xi1^3") | 1 << idx("xi2"));
}

#[test]
fn dual_modules_are_modules() {
    for (l, j, n) in [(-1, 0, 2), (0, 2, 1), (1, 1, 2), (1, 2, 2), (2, 1, 2)] {
        let d = def(l, j, n);
        let a = build_an(n).unwrap();
        assert!(FinModule::dual_of(&d, &a).unwrap().is_module(&a), "{}", d.name);
        assert!(is_comodule(&d).unwrap());
    }
    let a = build_an(1).unwrap();
    assert_eq!(FinModule::dual_of(&f2(2), &a).unwrap_err(), ExtError::LevelMismatch { module: 2, algebra: 1 });
}

#[test]
fn a0_h0_tower() {
    let c = ext_chart(&f2(0), 30, 30).unwrap();
    for s in 0..=30u32 {
        for t in 0..=30u64 {
            assert_eq!(c.dim(s, t), usize::from(t == s as u64), "({s},{t})");
        }
    }
    assert!((0..30).all(|s| c.product_rank(0, s, s as u64) == 1));
    let cob = cobar_ext(&f2(0), 12, 12, DEFAULT_GUARD).unwrap();
    assert_eq!(cob, (0..=12).map(|s| ((s, s as u64), 1)).collect());
}

#[test]
fn a1_spot_values() {
    let r = resolve_def(&f2(1), 24, 24).unwrap();
    assert!(r.is_complex() && r.is_minimal());
    let c = r.chart();
    // Independent: the literal cobar complex.
    let cob = cobar_ext(&f2(1), 12, 12, DEFAULT_GUARD).unwrap();
    for (s, t) in [(1, 2), (3, 7), (4, 12)] {
        assert_eq!(c.dim(s, t), 1);
        assert_eq!(cob.get(&(s, t)), Some(&1));
    }
    // h₁² ≠ 0, h₁³ = 0, h₀h₁ = 0, h₀a ≠ 0.
    assert_eq!(c.product_rank(1, 0, 0), 1);
    assert_eq!(c.product_rank(1, 1, 2), 1);
    assert_eq!(c.product_rank(1, 2, 4), 0);
    assert_eq!(c.product_rank(0, 1, 2), 0);
    assert_eq!(c.product_rank(0, 3, 7), 1);
    assert!(c.products_consistent());
}

#[test]
fn a2_c4_c6() {
    let r = resolve_def(&f2(2), 40, 40).unwrap();
    assert!(r.is_complex() && r.is_minimal());
    let c = r.chart();
    let census = v0_towers(&c, 0..=12, DEFAULT_MARGIN);
    assert!(census.all_stable());
    let expected: Vec<(i64, usize)> = (0..=12).map(|n| (n, usize::from([0, 8, 12].contains(&n)))).collect();
    assert_eq!(census.counts(), expected);
    // [c₄] at (8,4) is the bottom of its tower; [c₆] at (12,5) lies on the
    // stem-12 tower, two steps above its bottom.
    assert_eq!(census.stems[8].bottoms, vec![4]);
    assert_eq!(census.stems[12].bottoms, vec![3]);
    let on_tower = |s: u32, t: u64| c.records(Some(&census)).iter().find(|r| r.s == s && r.t == t).and_then(|r| r.tower);
    assert_eq!((c.dim(4, 12), on_tower(4, 12)), (1, Some(1)));
    assert_eq!((c.dim(5, 17), on_tower(5, 17)), (1, Some(1)));
    // h₀³h₂ = 0, h₀²h₂ ≠ 0.
    assert_eq!(c.dim(1, 4), 1);
    assert_eq!(c.product_rank(0, 2, 5), 1);
    assert_eq!(c.product_rank(0, 3, 6), 0);
    assert_eq!(c.dim_checked(3, 41), Err(ExtError::Range { t_max: 40, needed: 41 }));
}

#[test]
fn oracle_pairs_agree() {
    for p in oracle_pairs() {
        let r = run_pair(&p).unwrap();
        assert!(r.ok(), "{r:?}");
        assert!(r.total_dim > 0);
    }
}

#[test]
fn bo1_cobar_vs_resolution_stems_to_12() {
    // Literal cobar at small t; cofree resolution through stem 12 with s ≤ 12.
    let d = def(1, 1, 2);
    let a = build_an(2).unwrap();
    let c = ext_chart(&d, 24, 12).unwrap();
    let cof = cofree_ext(&a, &ComoduleData::from_def(&d, &a).unwrap(), 24, 12);
    assert_eq!(c.dims, cof);
    let cob = cobar_ext(&d, 8, 8, DEFAULT_GUARD).unwrap();
    assert!(cob.iter().all(|(k, v)| c.dims.get(k) == Some(v)));
    assert!(c.dims.iter().filter(|((_, t), _)| *t <= 8).all(|(k, v)| cob.get(k) == Some(v)));
}

#[test]
fn cobar_guard() {
    assert!(matches!(cobar_ext(&f2(2), 30, 30, 1000), Err(ExtError::Guard { .. })));
}

#[test]
fn a1_towers_on_a_mod_a1() {
    // (A//A(1))_* in degrees ≤ 16 is a subcomodule; Ext agrees with the full
    // comodule in stems well below 16.
    let full = truncate(&def(1, 4, 1), 16);
    let c = ext_chart(&full, 60, 48).unwrap();
    let census = v0_towers(&c, 0..=8, DEFAULT_MARGIN);
    assert!(census.all_stable());
    let expected: Vec<(i64, usize)> = (0..=8).map(|n| (n, [1, 0, 0, 0, 2, 0, 0, 0, 3][n as usize])).collect();
    assert_eq!(census.counts(), expected);
}

#[test]
fn hz_over_a0_single_tower() {
    for j in 1..=4 {
        let d = def(0, j, 0);
        let top = *d.degrees.iter().max().unwrap() as i64;
        let c = ext_chart(&d, top as u64 + 24, 24).unwrap();
        let census = v0_towers(&c, 0..=top, DEFAULT_MARGIN);
        assert!(census.all_stable());
        let towers: Vec<_> = census.stems.iter().filter(|s| s.count > 0).map(|s| (s.stem, s.bottoms.clone())).collect();
        assert_eq!(towers, vec![(0, vec![0])], "HZ_{j}");
    }
}

#[test]
fn direct_sum_additivity() {
    // (A//A(2))_* ≅ ⊕ Σ^{8j} bo_j as A(2)_*-comodules, compared through t = 32.
    let whole = truncate(&def(2, 4, 2), 32);
    let parts: Vec<ModuleDef> = (0..=4).map(|j| truncate(&shift(&def(1, j, 2), 8 * j as u64), 32)).collect();
    let sum = direct_sum("⊕ Σ^{8j} bo_j", &parts);
    assert_eq!(whole.dim(), sum.dim());
    let a = ext_chart(&whole, 32, 32).unwrap();
    let b = ext_chart(&sum, 32, 32).unwrap();
    assert_eq!(a.dims, b.dims);
    let mut added = std::collections::BTreeMap::new();
    for p in &parts {
        for (k, v) in ext_chart(p, 32, 32).unwrap().dims {
            *added.entry(k).or_insert(0) += v;
        }
    }
    assert_eq!(a.dims, added);
}

#[test]
fn cocycles() {
    let v = cobar_cocycle_check(&nu_module(), &nu_chain()).unwrap();
    assert!(v.cocycle, "{:?}", v.boundary);
    assert_eq!((v.s, v.t), (3, 15));
    let m = nu_hz_module();
    assert!(is_comodule(&m).unwrap());
    let v = cobar_cocycle_check(&m, &nu_hz_chain()).unwrap();
    assert!(v.cocycle, "{:?}", v.boundary);
    assert_eq!((v.s, v.t), (1, 5));
}

#[test]
fn cocycle_negative_controls() {
    // Dropping any single correction term breaks the cocycle condition.
    for k in 0..nu_chain().len() {
        let mut c = nu_chain();
        c.remove(k);
        assert!(!cobar_cocycle_check(&nu_module(), &c).unwrap().cocycle);
    }
    for k in 0..nu_hz_chain().len() {
        let mut c = nu_hz_chain();
        c.remove(k);
        assert!(!cobar_cocycle_check(&nu_hz_module(), &c).unwrap().cocycle);
    }
    // [ξ̄₁|ξ̄₁|ξ̄₁]x alone has boundary [ξ̄₁|ξ̄₁|ξ̄₁|ξ̄₁⁴]y.
    let v = cobar_cocycle_check(&nu_module(), &nu_chain()[..1]).unwrap();
    assert_eq!(v.boundary, vec!["[xi1|xi1|xi1|xi1^4] xb1^8".to_string()]);
    let bad = vec![CobarTerm::new(&["xb1"], "not-a-cell")];
    assert_eq!(cobar_cocycle_check(&nu_module(), &bad).unwrap_err(), ExtError::Coefficient("not-a-cell".into()));
    let mixed = vec![CobarTerm::new(&["xb1"], "xb1^8"), CobarTerm::new(&["xb1", "xb1"], "xb1^8")];
    assert_eq!(cobar_cocycle_check(&nu_module(), &mixed).unwrap_err(), ExtError::Inhomogeneous);
}

#[test]
fn chain_text_format() {
    let text = "# h0^3 h2 killer\n[xb1|xb1|xb1] xb2^4\n[xb1|xb2|xb2] xb1^8\n[xb1|xb1|xb1^2 xb2] xb1^8\n[xb1|xb1 xb2|xb1^2] xb1^8\n[xb2|xb1^2|xb1^2] xb1^8\n";
    assert_eq!(parse_chain(text).unwrap(), nu_chain());
    assert!(parse_chain("xb1 xb1^8").is_err());
}

#[test]
fn chart_export() {
    let c = ext_chart(&f2(1), 16, 16).unwrap();
    let census = v0_towers(&c, 0..=8, DEFAULT_MARGIN);
    let json = c.to_json(Some(&census));
    let recs = json["records"].as_array().unwrap();
    assert_eq!(recs.len(), c.dims.values().filter(|&&d| d > 0).count());
    let r = recs.iter().find(|r| r["s"] == 1 && r["t"] == 2).unwrap();
    assert_eq!((r["stem"].as_i64(), r["dim"].as_u64(), r["h1"].as_u64(), r["tower"].as_u64()), (Some(1), Some(1), Some(1), Some(0)));
    let csv = c.to_csv(Some(&census)).unwrap();
    assert!(csv.starts_with("s,t,stem,dim,h0,h1,h2,tower\n"));
    assert_eq!(csv.lines().count(), recs.len() + 1);
    let back: ExtChart = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back.dims, c.dims);
    assert_eq!(back.products, c.products);
}
