//! Acceptance suite: one PASS/FAIL line per criterion, with the runtime
//! budget each one is held to. Lines go straight to stderr so they show up
//! without `--nocapture`.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use metric_polytope::*;
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed;

struct Outcome {
    pass: bool,
    detail: String,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn enumerated(n: usize) -> &'static (MetricPolytope, VertexSet, VertexGraph) {
    static CELLS: [OnceLock<(MetricPolytope, VertexSet, VertexGraph)>; 7] =
        [const { OnceLock::new() }; 7];
    CELLS[n].get_or_init(|| {
        let poly = MetricPolytope::new(n).unwrap();
        let vs = enumerate_vertices(n).unwrap();
        let g = build_graph(&poly, &vs).unwrap();
        (poly, vs, g)
    })
}

fn counterexample() -> (MetricPolytope, EmbeddedFixture) {
    (MetricPolytope::new(9).unwrap(), EmbeddedFixture::counterexample())
}

fn c1_facet_count() -> Outcome {
    let counts: Vec<usize> = (3..=9).map(|n| generate_facets(n).unwrap().len()).collect();
    let want: Vec<usize> = (3..=9).map(|n| 4 * binomial(n, 3)).collect();
    Outcome {
        pass: counts == want && counts[6] == 336,
        detail: format!("counts n=3..9 {counts:?}"),
    }
}

fn c2_incidence() -> Outcome {
    let (poly, fx) = counterexample();
    let got: BTreeSet<FacetKind> = poly
        .incidence(&fx.vertex)
        .unwrap()
        .into_iter()
        .map(|id| poly.facet(id).kind())
        .collect();
    let want: BTreeSet<FacetKind> = fx.expected_incidence.iter().copied().collect();
    Outcome {
        pass: got == want && want.len() == 37,
        detail: format!("{} tight, {} expected, sets equal: {}", got.len(), want.len(), got == want),
    }
}

fn c3_cone() -> Outcome {
    let (poly, fx) = counterexample();
    let cone = tangent_cone(&poly, &fx.vertex).unwrap();
    Outcome {
        pass: cone.rays.len() == 37,
        detail: format!("{} extreme rays", cone.rays.len()),
    }
}

fn c4_neighbors() -> Outcome {
    let (poly, fx) = counterexample();
    let got: BTreeSet<MetricVector> =
        cone::neighbors(&poly, &fx.vertex).unwrap().into_iter().collect();
    let want: BTreeSet<MetricVector> = fx.expected_neighbors.iter().cloned().collect();
    let fractional = got.iter().filter(|w| !w.is_integral()).count();
    Outcome {
        pass: got == want && want.len() == 37 && fractional == 37,
        detail: format!("{} neighbors, {fractional} fractional, sets equal: {}", got.len(), got == want),
    }
}

fn c5_refutation() -> Outcome {
    let (poly, fx) = counterexample();
    let cuts = CutSet::all(9).unwrap().len();
    let adjacent = adjacent_to_some_cut(&poly, &fx.vertex).unwrap();
    Outcome {
        pass: cuts == 256 && !adjacent,
        detail: format!("{cuts} cuts tested, adjacent to some cut: {adjacent}"),
    }
}

fn c6_counts() -> (Outcome, Duration) {
    let want = [(3, 4, 4), (4, 8, 8), (5, 32, 16), (6, 544, 32)];
    let mut got = Vec::new();
    let mut small = Duration::ZERO;
    let mut pass = true;
    for (n, total, cuts) in want {
        let t = Instant::now();
        let (_, vs, _) = enumerated(n);
        if n <= 5 {
            small += t.elapsed();
        }
        pass &= vs.len() == total && vs.cut_count() == cuts;
        got.push((vs.len(), vs.cut_count()));
    }
    (
        Outcome {
            pass,
            detail: format!("(vertices, cuts) for n=3..6 {got:?}"),
        },
        small,
    )
}

fn c7_diameters() -> Outcome {
    let got: Vec<usize> = (3..=6).map(|n| diameter(&enumerated(n).2).unwrap()).collect();
    Outcome {
        pass: got == [1, 1, 2, 2],
        detail: format!("diameters n=3..6 {got:?}"),
    }
}

fn c8_domination() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [5, 6] {
        let (poly, vs, _) = enumerated(n);
        let r = check_domination(poly, vs).unwrap();
        pass &= r.holds();
        parts.push(format!("m_{n}: {} violators of {}", r.violators.len(), r.fractional));
    }
    Outcome {
        pass,
        detail: parts.join("; "),
    }
}

fn c9_connectivity() -> Outcome {
    let g = &enumerated(6).2;
    let first = check_fractional_connectivity(g);
    let again = check_fractional_connectivity(g);
    Outcome {
        pass: first == again && first.components() >= 1,
        detail: format!("m_6 {first}; expected connected"),
    }
}

fn c10_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut failures = Vec::new();

    // switching involution
    let mut ok = true;
    for _ in 0..1000 {
        let n = rng.gen_range(3..=7);
        let coords = (0..n * (n - 1) / 2)
            .map(|_| Rational::new(BigInt::from(rng.gen_range(-6..=12)), BigInt::from(rng.gen_range(1..=6))))
            .collect();
        let x = MetricVector::new(n, coords).unwrap();
        let s = CutSet::new(n, (2..=n).filter(|_| rng.gen_bool(0.5))).unwrap();
        let back = symmetry::apply_switching(&s, &symmetry::apply_switching(&s, &x).unwrap()).unwrap();
        ok &= back == x;
    }
    if !ok {
        failures.push("switching involution");
    }

    // group action on m_5: feasibility, incidence size, adjacency
    let (poly, vs, _) = enumerated(5);
    let verts = vs.vertices();
    let mut ok = true;
    for _ in 0..200 {
        let mut images: Vec<usize> = (1..=5).collect();
        images.shuffle(&mut rng);
        let s = CutSet::new(5, (2..=5).filter(|_| rng.gen_bool(0.5))).unwrap();
        let g = SymmetryElement::new(Permutation::new(images).unwrap(), s).unwrap();
        let u = verts.choose(&mut rng).unwrap();
        let v = verts.choose(&mut rng).unwrap();
        if u == v {
            continue;
        }
        let (gu, gv) = (g.apply(u).unwrap(), g.apply(v).unwrap());
        ok &= poly.contains(&gu) && poly.contains(&gv);
        ok &= poly.incidence(u).unwrap().len() == poly.incidence(&gu).unwrap().len();
        ok &= poly.are_adjacent(u, v).unwrap() == poly.are_adjacent(&gu, &gv).unwrap();
    }
    if !ok {
        failures.push("group action");
    }

    // brute-force oracle
    for n in [3, 4] {
        let ours: BTreeSet<Vec<Rational>> = enumerated(n)
            .1
            .vertices()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect();
        if ours != common::brute_force_vertices(n) {
            failures.push("basic-solution oracle");
        }
    }

    // ray shooting against the rank test
    let (p9, fx) = counterexample();
    let mut ok = true;
    for v in verts {
        for w in cone::neighbors(poly, v).unwrap() {
            ok &= poly.are_adjacent(v, &w).unwrap();
        }
    }
    for w in cone::neighbors(&p9, &fx.vertex).unwrap() {
        ok &= p9.are_adjacent(&fx.vertex, &w).unwrap();
    }
    if !ok {
        failures.push("ray shooting vs rank test");
    }

    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "involution x1000, group x200 on m_5, oracle n=3,4, ray shooting on m_5 and m_9".into()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    }
}

fn report(id: usize, name: &str, out: Outcome, took: Duration, budget: Duration) -> bool {
    let pass = out.pass && took <= budget;
    let line = format!(
        "criterion {id:>2} {} {name}: {} [{:.3}s, budget {}s]",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        budget.as_secs()
    );
    let _ = writeln!(std::io::stderr(), "{line}");
    pass
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

#[test]
fn acceptance() {
    let mut all = true;

    let (o, t) = timed(c1_facet_count);
    all &= report(1, "facet count", o, t, secs(1));
    let (o, t) = timed(c2_incidence);
    all &= report(2, "counterexample incidence", o, t, secs(1));
    let (o, t) = timed(c3_cone);
    all &= report(3, "counterexample cone", o, t, secs(5));
    let (o, t) = timed(c4_neighbors);
    all &= report(4, "counterexample neighbors", o, t, secs(10));
    let (o, t) = timed(c5_refutation);
    all &= report(5, "no adjacent cut", o, t, secs(10));

    let ((o, small), t) = timed(c6_counts);
    let small_ok = small <= secs(10);
    let o = Outcome {
        pass: o.pass && small_ok,
        detail: format!("{} (n<=5 in {:.3}s, budget 10s)", o.detail, small.as_secs_f64()),
    };
    all &= report(6, "enumeration counts", o, t, secs(600));

    let (o, t) = timed(c7_diameters);
    all &= report(7, "diameters", o, t, secs(60));
    let (o, t) = timed(c8_domination);
    all &= report(8, "domination", o, t, secs(60));
    let (o, t) = timed(c9_connectivity);
    all &= report(9, "fractional connectivity", o, t, secs(60));
    let (o, t) = timed(c10_properties);
    all &= report(10, "property suites", o, t, secs(120));

    assert!(all, "acceptance criteria failed; see the lines above");
}
