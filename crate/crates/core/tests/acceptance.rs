//! The acceptance suite: ten criteria, one status line each.
//!
//! Runs without the libtest harness so the status lines are always shown.
//! Criteria 1 and 7 contain grid points that admit no net at all; for those
//! the suite prints FAIL and instead checks the exhaustive impossibility
//! argument, failing the run only if that argument does not hold.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use trinet::cubics::cubic_space_through;
use trinet::families::{
    classify_net, construct_algebraic_in, construct_conic_line, construct_tetrahedron, construct_triangular, default_offsets,
    resolve_subgroup, SubgroupSpec, TetraCosets,
};
use trinet::geometry::{collinear, meet};
use trinet::groups::{coset_latin_square, cosets, is_normal, isomorphic, subgroups, symmetric_group, Side};
use trinet::nets::{h_member_subnets, identify_realized_group, verify_net, SubnetMode};
use trinet::search::{canonical_representative, search_realizations};
use trinet::symmetries::fixtures::{order_five_map, order_five_pencil, order_six_maps, order_six_pencil};
use trinet::symmetries::{fundamental_frame, theta_order, triangular_homologies};
use trinet::{
    Cubic, CubicGroup, DualThreeNet, Error, FiniteGroup, GroupSpec, PrimeField, ProjLine, ProjPoint, Projectivity,
    Result, SearchConfig,
};

/// Outcome of one criterion.
struct Verdict {
    pass: bool,
    /// The failure is a proven impossibility, not a defect.
    proven_impossible: bool,
    detail: String,
}

impl Verdict {
    fn check(pass: bool, detail: String) -> Self {
        Verdict {
            pass,
            proven_impossible: false,
            detail,
        }
    }
}

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn group(spec: GroupSpec) -> FiniteGroup {
    FiniteGroup::make(&spec).unwrap()
}

/// `Y²Z = X³ + aXZ² + bZ³`.
fn weierstrass(f: &PrimeField, a: i64, b: i64) -> Cubic {
    Cubic::new(f, [-1, 0, 0, 0, 0, -a, 0, 1, 0, -b]).unwrap()
}

/// The algebraic net `T + g1, T + g2, T + g3` for the first subgroup `T` of
/// order `k`, with the smallest admissible offsets.
fn algebraic(f: &PrimeField, curve: &Cubic, k: usize) -> Result<DualThreeNet> {
    let g = CubicGroup::with_default_identity(f, curve)?;
    let spec = SubgroupSpec::Order(k);
    let t = resolve_subgroup(&g, &spec)?;
    let (g1, g2) = default_offsets(&g, &t).ok_or(Error::CosetsOverlap)?;
    construct_algebraic_in(&g, &spec, &g1, &g2)
}

/// As [`algebraic`], with the first offsets leaving no component on a line:
/// such a net lies in none of the other families.
fn proper_algebraic(f: &PrimeField, curve: &Cubic, k: usize) -> Result<DualThreeNet> {
    let g = CubicGroup::with_default_identity(f, curve)?;
    let spec = SubgroupSpec::Order(k);
    for i in 0..g.order() {
        for j in 0..g.order() {
            let Ok(net) = construct_algebraic_in(&g, &spec, &g.point(i), &g.point(j)) else { continue };
            let on_line = |c: &[ProjPoint]| c[2..].iter().all(|r| collinear(f, &c[0], &c[1], r));
            if !net.components().iter().any(|c| on_line(c)) {
                return Ok(net);
            }
        }
    }
    Err(Error::CosetsOverlap)
}

fn realizes(net: &DualThreeNet, g: &FiniteGroup) -> bool {
    matches!(identify_realized_group(net), Ok(Some((h, _))) if isomorphic(&h, g).is_some())
}

fn is_net(net: &DualThreeNet) -> bool {
    verify_net(net).map(|r| r.is_net).unwrap_or(false)
}

fn random_projectivity(f: &PrimeField, rng: &mut ChaCha8Rng) -> Projectivity {
    loop {
        let m = [0, 1, 2].map(|_| [0, 1, 2].map(|_| rng.gen_range(0..f.p())));
        if let Ok(t) = Projectivity::from_elems(f, m) {
            return t;
        }
    }
}

/// A named net with the group it should realize and its expected family.
struct Golden {
    name: String,
    net: DualThreeNet,
    group: FiniteGroup,
    family: &'static str,
}

fn golden_nets() -> Vec<Golden> {
    let mut out = Vec::new();
    for (p, n) in [(13, 3), (13, 4), (31, 5), (31, 10)] {
        out.push(Golden {
            name: format!("triangular({p},{n})"),
            net: construct_triangular(&field(p), n, 1, 1).unwrap(),
            group: group(GroupSpec::Cyclic(n)),
            family: "triangular",
        });
    }
    for (p, n) in [(13, 3), (31, 10)] {
        let f = field(p);
        let h = f.mult_subgroup(n).unwrap();
        let v = (2..p as u32).find(|v| !h.contains(v)).unwrap();
        out.push(Golden {
            name: format!("conicline({p},{n})"),
            net: construct_conic_line(&f, n, 1, v as i64).unwrap(),
            group: group(GroupSpec::Cyclic(n)),
            family: "conicline",
        });
    }
    // the groups of points are C2×C6, C18 and C20
    for (p, a, b, k, spec) in [
        (7, 0, 1, 3, GroupSpec::Cyclic(3)),
        (7, 0, 1, 4, GroupSpec::Product(2, 2)),
        (13, 1, 1, 3, GroupSpec::Cyclic(3)),
        (13, 7, 5, 4, GroupSpec::Cyclic(4)),
        (13, 1, 1, 6, GroupSpec::Cyclic(6)),
    ] {
        let f = field(p);
        out.push(Golden {
            name: format!("algebraic(F_{p}, y²=x³+{a}x+{b}, |T|={k})"),
            net: proper_algebraic(&f, &weierstrass(&f, a, b), k).unwrap(),
            group: group(spec),
            family: "proper_algebraic",
        });
    }
    for (p, n) in [(13, 3), (31, 5), (43, 7)] {
        out.push(Golden {
            name: format!("tetrahedron({p},{n})"),
            net: construct_tetrahedron(&field(p), n, None).unwrap(),
            group: group(GroupSpec::Dihedral(n)),
            family: "tetrahedron",
        });
    }
    out
}

/// No coset choice gives a tetrahedron net for `(p, n)`.
fn tetrahedron_impossible(p: u64, n: usize) -> (bool, usize) {
    let f = field(p);
    let reps = TetraCosets::coset_representatives(&f, n).unwrap();
    let mut tried = 0;
    for &a1 in &reps {
        for &a2 in &reps {
            for &b1 in &reps {
                tried += 1;
                let c = TetraCosets {
                    a1: a1 as i64,
                    a2: a2 as i64,
                    b1: b1 as i64,
                };
                if construct_tetrahedron(&f, n, Some(c)).is_ok() {
                    return (false, tried);
                }
            }
        }
    }
    (construct_tetrahedron(&f, n, None).is_err(), tried)
}

fn criterion_1() -> Verdict {
    let mut bad = Vec::new();
    let goldens = golden_nets();
    for g in &goldens {
        let family = classify_net(&g.net).map(|t| t.name());
        if !is_net(&g.net) || !realizes(&g.net, &g.group) || family != Ok(g.family) {
            bad.push(format!("{} (family {family:?})", g.name));
        }
    }
    // order 6 needs at least 18 points; a curve over F_7 has at most 13
    let f7 = field(7);
    let most = (0..7)
        .flat_map(|a| (0..7).map(move |b| (a, b)))
        .filter(|&(a, b)| weierstrass(&f7, a, b).singular_points(&f7).is_empty())
        .map(|(a, b)| weierstrass(&f7, a, b).rational_points(&f7).len())
        .max()
        .unwrap();
    let mut impossible = Vec::new();
    let mut proof_holds = most < 18;
    for (p, n) in [(11, 5), (13, 6), (31, 15)] {
        let (holds, tried) = tetrahedron_impossible(p, n);
        proof_holds &= holds;
        impossible.push(format!("tetrahedron({p},{n}) [{tried} coset choices, none a net]"));
    }
    let good = goldens.len() - bad.len();
    let mut detail = format!("{good}/{} constructions verified, realize their group and classify correctly", goldens.len());
    if !bad.is_empty() {
        detail.push_str(&format!("; failing: {}", bad.join(", ")));
    }
    detail.push_str(&format!(
        "; unattainable: {}; |T|=6 only over F_13 (largest smooth Weierstrass curve over F_7 has {most} points)",
        impossible.join(", ")
    ));
    Verdict {
        pass: false,
        proven_impossible: bad.is_empty() && proof_holds,
        detail,
    }
}

fn criterion_2() -> Verdict {
    let curves: Vec<(u64, Cubic)> = vec![
        (7, weierstrass(&field(7), 0, 1)),
        (11, weierstrass(&field(11), 1, 1)),
        (13, weierstrass(&field(13), 1, 1)),
        (13, weierstrass(&field(13), 7, 5)),
        (7, Cubic::new(&field(7), [1, 0, 0, 0, 0, 0, 1, 0, 0, 1]).unwrap()),
    ];
    let mut sizes = Vec::new();
    let mut ok = true;
    for (p, curve) in &curves {
        let f = field(*p);
        let g = CubicGroup::with_default_identity(&f, curve).unwrap();
        let n = g.order();
        sizes.push(n);
        ok &= n <= 30 && n == curve.rational_points(&f).len();
        let o = g.identity();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    ok &= g.add(g.add(i, j), k) == g.add(i, g.add(j, k));
                    let sum_zero = g.point(g.add(g.add(i, j), k)) == o;
                    if i != j && j != k && i != k {
                        ok &= sum_zero == collinear(&f, &g.point(i), &g.point(j), &g.point(k));
                    }
                }
                // the third point on the chord or tangent through P and Q
                let r = trinet::cubics::third_intersection(&f, curve, &g.point(i), &g.point(j)).unwrap();
                ok &= g.point(g.add(g.add(i, j), g.index_of(&r).unwrap())) == o;
            }
        }
    }
    Verdict::check(ok, format!("{} curves with {sizes:?} points: associativity and collinear ⇔ sum zero", curves.len()))
}

fn criterion_3() -> Verdict {
    let f = field(101);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut nondegenerate, mut holds) = (0, 0);
    for _ in 0..500 {
        let mut line = || loop {
            let c = [0, 1, 2].map(|_| rng.gen_range(0..101u32));
            if let Ok(l) = ProjLine::from_elems(&f, c) {
                return l;
            }
        };
        let a = [line(), line(), line()];
        let b = [line(), line(), line()];
        let distinct: HashSet<ProjLine> = a.iter().chain(&b).copied().collect();
        if distinct.len() < 6 {
            continue;
        }
        let pts: Vec<ProjPoint> = a.iter().flat_map(|x| b.iter().map(move |y| meet(&f, x, y).unwrap())).collect();
        if pts.iter().collect::<HashSet<_>>().len() < 9 {
            continue;
        }
        nondegenerate += 1;
        let skip = rng.gen_range(0..9);
        let eight: Vec<ProjPoint> = pts.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, p)| *p).collect();
        let basis = cubic_space_through(&f, &eight);
        if basis.len() >= 2 && basis.iter().all(|c| c.contains(&f, &pts[skip])) {
            holds += 1;
        }
    }
    Verdict::check(
        nondegenerate > 0 && holds == nondegenerate,
        format!("ninth point on every cubic through the other eight in {holds}/{nondegenerate} non-degenerate configurations"),
    )
}

fn criterion_4() -> Verdict {
    let mut ok = true;
    let mut maps = 0;
    for n in [3, 4, 6, 12] {
        let f = field(13);
        let raw = construct_triangular(&f, n, 1, 1).unwrap();
        let net = raw.transform(&fundamental_frame(&raw).unwrap());
        let h = triangular_homologies(&net).unwrap();
        let sets: Vec<HashSet<ProjPoint>> = net.components().iter().map(|c| c.iter().copied().collect()).collect();
        // centers in Λ1 fix Λ1 and swap the others; likewise for Λ2, Λ3
        for (list, perm) in [(&h.phi, [0, 2, 1]), (&h.psi, [2, 1, 0]), (&h.theta, [1, 0, 2])] {
            for hom in list {
                maps += 1;
                ok &= hom.map.compose(&f, &hom.map).is_identity() && !hom.map.is_identity();
                for c in 0..3 {
                    ok &= sets[c].iter().all(|pt| sets[perm[c]].contains(&hom.map.apply(&f, pt)));
                }
            }
        }
    }
    let f = field(13);
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let psis = order_six_maps(&f);
    let phi = order_five_map(&f);
    for _ in 0..20 {
        let lambda = rng.gen_range(0..13u32);
        let six = order_six_pencil(&f, lambda).unwrap();
        ok &= psis.iter().all(|m| six.is_preserved_by(&f, m));
        ok &= order_five_pencil(&f, lambda).unwrap().is_preserved_by(&f, &phi);
        // pointwise: the maps permute the curve's rational points
        let pts: HashSet<ProjPoint> = six.rational_points(&f).into_iter().collect();
        ok &= psis.iter().all(|m| pts.iter().all(|p| pts.contains(&m.apply(&f, p))));
    }
    Verdict::check(
        ok,
        format!("{maps} triangular homologies over F_13 involutory with the stated component action; ψ₀, ψ₂, ψ₄ and φ preserve their pencils for 20 sampled λ"),
    )
}

fn criterion_5() -> Verdict {
    let mut seen = Vec::new();
    let mut ok = true;
    for (p, n) in [(13, 3), (13, 4), (11, 5), (31, 5), (13, 6), (19, 9)] {
        let raw = construct_triangular(&field(p), n, 1, 1).unwrap();
        let net = raw.transform(&fundamental_frame(&raw).unwrap());
        let got = theta_order(&net).unwrap();
        let expected = if n % 3 == 0 { n * n / 3 } else { n * n };
        ok &= got == expected;
        seen.push(format!("|H|={n}@{p}: {got}"));
    }
    Verdict::check(ok, format!("|Θ| {}", seen.join(", ")))
}

fn criterion_6() -> Verdict {
    let d4 = group(GroupSpec::Dihedral(4));
    let c4 = subgroups(&d4)
        .into_iter()
        .find(|s| s.len() == 4 && s.iter().any(|&x| d4.element_order(x) == 4))
        .unwrap();
    let s3 = symmetric_group(3);
    let a3 = subgroups(&s3).into_iter().find(|s| s.len() == 3).unwrap();
    let cases = [("(C6,C3)", group(GroupSpec::Cyclic(6)), vec![0, 2, 4]), ("(D4,C4)", d4, c4), ("(Sym3,C3)", s3, a3)];
    let mut ok = true;
    let mut squares = 0;
    for (_, g, h) in &cases {
        ok &= is_normal(g, h).unwrap();
        let all = cosets(g, h, Side::Left).unwrap();
        for h1 in &all {
            for h2 in &all {
                let cs = coset_latin_square(g, h, h1, h2).unwrap();
                squares += 1;
                ok &= cs.square.is_isotopic_via(cs.subgroup.table(), &cs.witness);
                // recheck every cell straight from the Cayley table of G
                let hs: Vec<usize> = {
                    let mut v = h.clone();
                    v.sort_unstable();
                    v
                };
                for (i, &a) in cs.rows.iter().enumerate() {
                    for (j, &b) in cs.cols.iter().enumerate() {
                        let s = cs.square.get(i, j);
                        ok &= cs.symbols[s] == g.mul(a, b);
                        let (x, y) = (hs[cs.witness.rows[i]], hs[cs.witness.cols[j]]);
                        ok &= hs[cs.witness.symbols[s]] == g.mul(x, y);
                    }
                }
            }
        }
    }
    let names: Vec<&str> = cases.iter().map(|c| c.0).collect();
    Verdict::check(ok, format!("{squares} coset squares over {} isotopic to H via their witnesses", names.join(", ")))
}

fn criterion_7() -> Verdict {
    // over F_7: the curve y² = x³ + 1 has exactly C2×C6 as its group, so the
    // three cosets cannot be distinct
    let f7 = field(7);
    let curve7 = weierstrass(&f7, 0, 1);
    let g7 = CubicGroup::with_default_identity(&f7, &curve7).unwrap();
    let whole_group = isomorphic(&g7.to_finite_group(), &group(GroupSpec::Product(2, 6))).is_some();
    let attempt = algebraic(&f7, &curve7, 12);
    let most = (0..7)
        .flat_map(|a| (0..7).map(move |b| (a, b)))
        .filter(|&(a, b)| weierstrass(&f7, a, b).singular_points(&f7).is_empty())
        .map(|(a, b)| weierstrass(&f7, a, b).rational_points(&f7).len())
        .max()
        .unwrap();
    let proof = whole_group && attempt == Err(Error::CosetsOverlap) && most < 36;

    // the same statement on y² = x³ + 1 over F_31, whose group is C6×C6
    let f = field(31);
    let net = algebraic(&f, &weierstrass(&f, 0, 1), 12).unwrap();
    let c2c6 = group(GroupSpec::Product(2, 6));
    let labels = &net.labeling().unwrap().group;
    let h = subgroups(labels).into_iter().find(|s| s.len() == 6).unwrap();
    let subnets = h_member_subnets(&net, &h, SubnetMode::Normal).unwrap();
    let c6 = group(GroupSpec::Cyclic(6));
    let substitute = is_net(&net)
        && realizes(&net, &c2c6)
        && is_normal(labels, &h).unwrap()
        && subnets.len() == 4
        && subnets.iter().all(|s| is_net(&s.net) && realizes(&s.net, &c6));
    Verdict {
        pass: false,
        proven_impossible: proof && substitute,
        detail: format!(
            "unattainable over F_7 (36 points needed, largest smooth Weierstrass curve has {most}; attempt on y²=x³+1: {attempt:?}); \
             over F_31 on y²=x³+1: {} subnets, all nets realizing C6: {substitute}",
            subnets.len()
        ),
    }
}

fn criterion_8() -> Verdict {
    let mut ok = true;
    let mut summary = Vec::new();
    for p in [11, 13] {
        for spec in [
            GroupSpec::Cyclic(2),
            GroupSpec::Cyclic(3),
            GroupSpec::Cyclic(4),
            GroupSpec::Product(2, 2),
            GroupSpec::Cyclic(5),
            GroupSpec::Cyclic(6),
        ] {
            let g = group(spec);
            let mut config = SearchConfig::new(p, g.clone());
            config.node_budget = 10_000_000;
            let result = search_realizations(&config).unwrap();
            let algebraic = result
                .nets
                .iter()
                .filter(|n| !cubic_space_through(n.field(), &n.points()).is_empty())
                .count();
            let verified = result
                .nets
                .iter()
                .filter(|n| is_net(n) && n.labeling_holds() && realizes(n, &g))
                .count();
            ok &= result.exhausted && algebraic == result.nets.len() && verified == result.nets.len();
            summary.push(format!("{}@{p}:{}", g.describe(), result.nets.len()));
        }
    }
    Verdict::check(ok, format!("exhausted, all algebraic and re-verified; nets found {}", summary.join(" ")))
}

fn criterion_9() -> Verdict {
    let f7 = field(7);
    let f13 = field(13);
    let known: Vec<(DualThreeNet, GroupSpec)> = vec![
        (construct_triangular(&f13, 3, 1, 1).unwrap(), GroupSpec::Cyclic(3)),
        (construct_triangular(&f13, 4, 2, 5).unwrap(), GroupSpec::Cyclic(4)),
        (construct_triangular(&field(11), 5, 1, 1).unwrap(), GroupSpec::Cyclic(5)),
        (construct_conic_line(&f13, 3, 1, 2).unwrap(), GroupSpec::Cyclic(3)),
        (construct_conic_line(&field(11), 5, 1, 2).unwrap(), GroupSpec::Cyclic(5)),
        (algebraic(&f7, &weierstrass(&f7, 0, 1), 3).unwrap(), GroupSpec::Cyclic(3)),
        (algebraic(&f13, &weierstrass(&f13, 1, 1), 6).unwrap(), GroupSpec::Cyclic(6)),
        (algebraic(&f13, &weierstrass(&f13, 7, 5), 4).unwrap(), GroupSpec::Cyclic(4)),
        (construct_tetrahedron(&f13, 3, None).unwrap(), GroupSpec::Dihedral(3)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut found: HashMap<(u32, String), BTreeSet<Vec<Vec<ProjPoint>>>> = HashMap::new();
    let mut hits = 0;
    for i in 0..20 {
        let (net, spec) = &known[i % known.len()];
        let f = *net.field();
        let image = net.transform(&random_projectivity(&f, &mut rng));
        let key = (f.p(), format!("{spec:?}"));
        let reps = found.entry(key).or_insert_with(|| {
            let result = search_realizations(&SearchConfig::new(f.p() as u64, group(spec.clone()))).unwrap();
            assert!(result.exhausted);
            result.nets.iter().map(|n| n.components().to_vec()).collect()
        });
        let canon = canonical_representative(&image).unwrap();
        if reps.contains(&canon.components().to_vec()) {
            hits += 1;
        }
    }
    Verdict::check(hits == 20, format!("{hits}/20 projective images recovered by search with equal canonical form"))
}

fn criterion_10() -> Verdict {
    let goldens = golden_nets();
    let mut mutations = 0usize;
    let mut survivors = 0usize;
    let mut invariant = true;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for g in &goldens {
        let f = *g.net.field();
        let used: HashSet<ProjPoint> = g.net.points().into_iter().collect();
        let fresh: Vec<ProjPoint> = trinet::geometry::all_points(&f).filter(|p| !used.contains(p)).collect();
        let n = g.net.order();
        let slots: Vec<(usize, usize)> = (0..3).flat_map(|c| (0..n).map(move |i| (c, i))).collect();
        let alive: usize = slots
            .par_iter()
            .map(|&(c, i)| {
                fresh
                    .iter()
                    .filter(|q| {
                        let mut comps = g.net.components().clone();
                        comps[c][i] = **q;
                        is_net(&DualThreeNet::new(f, comps, None).unwrap())
                    })
                    .count()
            })
            .sum();
        mutations += slots.len() * fresh.len();
        survivors += alive;

        let mut broken = g.net.components().clone();
        broken[0][0] = fresh[0];
        let broken = DualThreeNet::new(f, broken, None).unwrap();
        let broken_count = verify_net(&broken).unwrap().violations.len();
        for _ in 0..100 {
            let m = random_projectivity(&f, &mut rng);
            invariant &= is_net(&g.net.transform(&m));
            let r = verify_net(&broken.transform(&m)).unwrap();
            invariant &= !r.is_net && r.violations.len() == broken_count;
        }
    }
    Verdict::check(
        survivors == 0 && invariant,
        format!(
            "{mutations} single-point mutations of {} nets, {survivors} still nets; verify_net invariant under 100 transforms per net: {invariant}",
            goldens.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(fn() -> Verdict, Duration); 10] = [
        (criterion_1, Duration::from_secs(5)),
        (criterion_2, Duration::from_secs(10)),
        (criterion_3, Duration::from_secs(10)),
        (criterion_4, Duration::from_secs(1)),
        (criterion_5, Duration::from_secs(5)),
        (criterion_6, Duration::from_secs(1)),
        (criterion_7, Duration::from_secs(1)),
        (criterion_8, Duration::from_secs(600)),
        (criterion_9, Duration::from_secs(120)),
        (criterion_10, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for (i, (run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let pass = v.pass && in_time;
        println!(
            "[criterion {}] {}: {} ({:.2?}, limit {:?})",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            elapsed,
            limit
        );
        if !pass && !(v.proven_impossible && in_time) {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
