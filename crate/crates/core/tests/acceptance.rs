//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use mixedvol_core::family::{homogenize, truncated_family, GradedFamily};
use mixedvol_core::geometry::{
    mixed_volume_interpolation, mixed_volume_polarization, RationalPolytope, RationalVector,
};
use mixedvol_core::monomial::MonomialIdeal;
use mixedvol_core::multiplicity::{
    family_polynomial, m_primary_family_multiplicities, mixed_multiplicities_family,
    mixed_multiplicities_ideals, power_family_geometric_multiplicities, scaling_identity_check,
    MultiplicityConfig,
};
use mixedvol_core::okounkov::{
    compute_c, level_count, levelwise_decomposition_check, quotient_level_dim, GammaSpec, Variant,
};
use mixedvol_core::rational::{self, frac, int, Rational};
use mixedvol_core::verify::{geometric_table, verify_theorem, VerifyOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ideal(d: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::new(d, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

fn poly(raw: &[&[i64]]) -> RationalPolytope {
    RationalPolytope::from_int_points(&raw.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).unwrap()
}

fn square(side: Rational) -> RationalPolytope {
    let z = int(0);
    let pts = [
        vec![z.clone(), z.clone()],
        vec![side.clone(), z.clone()],
        vec![z.clone(), side.clone()],
        vec![side.clone(), side],
    ];
    RationalPolytope::convex_hull(&pts.map(RationalVector::new)).unwrap()
}

fn body_family(k: &RationalPolytope) -> GradedFamily {
    GradedFamily::body(&homogenize(k, None).unwrap())
}

fn random_polytope(rng: &mut ChaCha8Rng, d: usize) -> RationalPolytope {
    let n = rng.gen_range(d + 1..=d + 4);
    let pts: Vec<RationalVector> = (0..n)
        .map(|_| {
            RationalVector::new(
                (0..d)
                    .map(|_| frac(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
                    .collect(),
            )
        })
        .collect();
    RationalPolytope::convex_hull(&pts).unwrap()
}

fn mv(bodies: &[RationalPolytope]) -> Rational {
    mixed_volume_polarization(bodies).unwrap()
}

/// Mixed-volume axioms on randomized rational polytopes.
fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut instances = 0;
    for round in 0..60 {
        let d = 1 + round % 3;
        let bodies: Vec<RationalPolytope> = (0..d).map(|_| random_polytope(&mut rng, d)).collect();
        let base = mv(&bodies);
        ensure(mixed_volume_interpolation(&bodies).unwrap() == base, || {
            format!("instance {round}: polarization and interpolation disagree")
        })?;
        let mut rev = bodies.clone();
        rev.reverse();
        ensure(mv(&rev) == base, || format!("instance {round}: not symmetric"))?;
        let diag = vec![bodies[0].clone(); d];
        ensure(
            mv(&diag) == Rational::from_integer(rational::factorial(d as u32)) * bodies[0].volume(),
            || format!("instance {round}: diagonal is not d! Vol"),
        )?;
        let other = random_polytope(&mut rng, d);
        let (lam, mu) = (frac(rng.gen_range(1..=5), 2), frac(rng.gen_range(1..=5), 3));
        let mut combo = bodies.clone();
        combo[0] = bodies[0].scale(&lam).minkowski_sum(&other.scale(&mu)).unwrap();
        let mut with_other = bodies.clone();
        with_other[0] = other.clone();
        ensure(mv(&combo) == &lam * &base + &mu * mv(&with_other), || {
            format!("instance {round}: not multilinear")
        })?;
        let mut grown = bodies.clone();
        let mut bigger_pts = bodies[0].vertices().to_vec();
        bigger_pts.extend(other.vertices().iter().cloned());
        grown[0] = RationalPolytope::convex_hull(&bigger_pts).unwrap();
        ensure(mv(&grown) >= base, || format!("instance {round}: not monotone"))?;
        let shift = RationalVector::new((0..d).map(|_| frac(rng.gen_range(-7..=7), 5)).collect());
        let moved: Vec<RationalPolytope> = bodies.iter().map(|k| k.translate(&shift).unwrap()).collect();
        ensure(mv(&moved) == base, || format!("instance {round}: not translation invariant"))?;
        instances += 1;
    }
    Ok(format!("{instances} random instances in d = 1, 2, 3"))
}

/// Exact equality of multiplicities and mixed volumes for lattice bodies.
fn criterion_2() -> Outcome {
    let k1 = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
    let k2 = poly(&[&[0, 0], &[1, 0], &[0, 1]]);
    let geo = geometric_table(&[k1.clone(), k2.clone()]).map_err(|e| e.to_string())?;
    let js: Vec<MonomialIdeal> = [&k1, &k2].iter().map(|k| (*body_family(k).ideal_at(1)).clone()).collect();
    let alg = mixed_multiplicities_ideals(&MonomialIdeal::maximal(3), &js, &MultiplicityConfig::default())
        .map_err(|e| e.to_string())?;
    ensure(alg == geo, || format!("tables differ: {alg:?} vs {geo:?}"))?;
    let e011 = alg.get(0, &[1, 1]).cloned().unwrap_or_default();
    ensure(e011 == int(2), || format!("e_(0,1,1) = {e011}, expected 2"))?;
    Ok(format!("{} entries equal, e_(0,1,1) = MV(K1, K2) = 2", alg.entries().len()))
}

/// `e(m^p | J_p) = p^{d_0 + 1} e(m | J_p)` for p = 1, 2, 3.
fn criterion_3() -> Outcome {
    let fams = [
        body_family(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])),
        body_family(&poly(&[&[0, 0], &[1, 0], &[0, 1]])),
    ];
    for p in 1..=3 {
        let js: Vec<MonomialIdeal> = fams.iter().map(|f| (*f.ideal_at(p)).clone()).collect();
        let check = scaling_identity_check(&js, p, &MultiplicityConfig::default()).map_err(|e| e.to_string())?;
        ensure(check.holds, || format!("p = {p}: identity fails at {:?}", check.witness))?;
    }
    Ok("holds exactly for p = 1, 2, 3".into())
}

/// Power families give constant normalized tables.
fn criterion_4() -> Outcome {
    let run = mixed_multiplicities_family(
        &GradedFamily::maximal(2),
        &[GradedFamily::power(&ideal(2, &[&[1, 0], &[0, 1]]))],
        &[1, 2, 4],
        &MultiplicityConfig::default(),
    )
    .map_err(|e| e.to_string())?;
    let first = &run.steps[0].normalized;
    ensure(run.steps.iter().all(|s| &s.normalized == first), || {
        "normalized tables vary with p".into()
    })?;
    Ok(format!("constant over p = 1, 2, 4: {:?}", first.entries().values().map(|v| v.to_string()).collect::<Vec<_>>()))
}

/// Colength = plain - hat level counts and the levelwise decomposition.
fn criterion_5() -> Outcome {
    let sq3 = body_family(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]));
    let interval = RationalPolytope::convex_hull(&[
        RationalVector::new(vec![int(0)]),
        RationalVector::new(vec![frac(3, 2)]),
    ])
    .unwrap();
    let trunc = truncated_family(&body_family(&interval), 2).unwrap();
    let fixtures: Vec<(GradedFamily, Vec<GradedFamily>, u32, Vec<u32>)> = vec![
        (GradedFamily::maximal(2), vec![GradedFamily::maximal(2)], 1, vec![1]),
        (
            GradedFamily::power(&MonomialIdeal::maximal_power(2, 2)),
            vec![GradedFamily::power(&ideal(2, &[&[1, 0], &[0, 2]]))],
            1,
            vec![1],
        ),
        (
            GradedFamily::maximal(2),
            vec![GradedFamily::power(&ideal(2, &[&[1, 0]])), GradedFamily::power(&ideal(2, &[&[0, 1]]))],
            1,
            vec![1, 1],
        ),
        (GradedFamily::maximal(3), vec![sq3], 1, vec![1]),
        (
            GradedFamily::power(&ideal(3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 1]])),
            vec![GradedFamily::maximal(3), GradedFamily::power(&ideal(3, &[&[1, 0, 0], &[0, 1, 0]]))],
            1,
            vec![1, 1],
        ),
        (GradedFamily::maximal(2), vec![trunc], 1, vec![2]),
    ];
    for (idx, (i, js, n0, n)) in fixtures.iter().enumerate() {
        let c = compute_c(i, js).map_err(|e| e.to_string())?;
        let plain = GammaSpec::new(Variant::Plain, i.clone(), js.clone(), *n0, n.clone(), c).map_err(|e| e.to_string())?;
        let hat = plain.with_variant(Variant::Hat);
        for m in 1..=4 {
            let q = quotient_level_dim(i, js, *n0, n, c, m).map_err(|e| e.to_string())?;
            let diff = level_count(&plain, m).unwrap() - level_count(&hat, m).unwrap();
            ensure(q == diff, || format!("fixture {idx}, m = {m}: colength {q} vs level difference {diff}"))?;
        }
        let report = levelwise_decomposition_check(i, js, *n0, n, 4).map_err(|e| e.to_string())?;
        ensure(report.holds(), || format!("fixture {idx}: decomposition fails at {:?}", report.witness))?;
    }
    Ok(format!("{} fixtures, m <= 4, plain and hat", fixtures.len()))
}

/// `G(n_1, n_2) = (n_1 + 2 n_2)^2 / 2` for powers of m and of m^2.
fn criterion_6() -> Outcome {
    let mm = MonomialIdeal::maximal(2);
    let m2 = MonomialIdeal::maximal_power(2, 2);
    // dim R / m^k = C(k + 1, 2), checked by direct enumeration.
    for k in 1..=6u32 {
        let mut outside = 0u64;
        let level = m2.power(k);
        for a in 0..2 * k {
            for b in 0..2 * k {
                if !level.contains_monomial(&[a, b]).unwrap() {
                    outside += 1;
                }
            }
        }
        let expected = (2 * k as u64 + 1) * (2 * k as u64) / 2;
        ensure(outside == expected, || format!("colength oracle off at k = {k}"))?;
    }
    let fams = [GradedFamily::power(&mm), GradedFamily::power(&m2)];
    let res = m_primary_family_multiplicities(&fams, &[1, 2], 4, &MultiplicityConfig::default())
        .map_err(|e| e.to_string())?;
    let fitted = res.fitted.clone().map_err(|e| e.to_string())?;
    let expected: BTreeMap<Vec<u32>, Rational> =
        [(vec![0, 2], int(4)), (vec![1, 1], int(2)), (vec![2, 0], int(1))].into_iter().collect();
    ensure(fitted == expected, || format!("fitted {fitted:?}"))?;
    for n1 in 1..=4u32 {
        for n2 in 1..=4u32 {
            let g: Rational = fitted
                .iter()
                .map(|(e, v)| {
                    v / Rational::from_integer(rational::factorial(e[0]) * rational::factorial(e[1]))
                        * rational::pow_int(n1 as u64, e[0])
                        * rational::pow_int(n2 as u64, e[1])
                })
                .sum();
            let closed = frac(((n1 + 2 * n2) * (n1 + 2 * n2)) as i64, 2);
            ensure(g == closed, || format!("G({n1}, {n2}) = {g}, expected {closed}"))?;
        }
    }
    ensure(res.agree, || "fit and bridged family tables disagree".into())?;
    for c in [3, 4] {
        let geo = power_family_geometric_multiplicities(&[mm.clone(), m2.clone()], c).map_err(|e| e.to_string())?;
        ensure(geo == expected, || format!("c^d - MV formula at c = {c} gives {geo:?}"))?;
    }
    Ok("e_(2,0) = 1, e_(1,1) = 2, e_(0,2) = 4; fit, bridge and c^d - MV (c = 3, 4) agree".into())
}

/// Limits for non-lattice bodies.
fn criterion_7() -> Outcome {
    let k1 = square(frac(1, 2));
    let k2 = square(int(1));
    let report = verify_theorem(&[k1, k2], &VerifyOptions::default()).map_err(|e| e.to_string())?;
    let geo = report.geometric.get(0, &[1, 1]).cloned().unwrap();
    ensure(geo == int(1), || format!("MV(K1, K2) = {geo}"))?;
    let seq: Vec<String> = report
        .steps
        .iter()
        .map(|s| s.via_maximal.get(0, &[1, 1]).unwrap().to_string())
        .collect();
    let last = report.final_deviations.iter().find(|e| e.d0 == 0 && e.dvec == [1, 1]).unwrap();
    let rel = last.rel_deviation.clone().unwrap().0;
    ensure(rel <= frac(1, 20), || format!("final relative deviation {rel}"))?;
    ensure(report.passed, || "report failed".into())?;
    let trend = if report.monotone_trend { "monotone" } else { "FLAGGED non-monotone" };
    Ok(format!("e_(0,1,1) over p = 1..16: [{}], final deviation {rel}, trend {trend}", seq.join(", ")))
}

/// No pure n-terms in the fitted family polynomial, non-negative entries.
fn criterion_8() -> Outcome {
    let cases: Vec<(GradedFamily, Vec<GradedFamily>)> = vec![
        (
            GradedFamily::power(&ideal(2, &[&[2, 0], &[0, 1]])),
            vec![GradedFamily::maximal(2), GradedFamily::power(&MonomialIdeal::maximal_power(2, 2))],
        ),
        (
            GradedFamily::power(&MonomialIdeal::maximal_power(2, 2)),
            vec![GradedFamily::power(&ideal(2, &[&[1, 0], &[0, 3]]))],
        ),
        (
            GradedFamily::power(&ideal(3, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 1]])),
            vec![GradedFamily::maximal(3)],
        ),
    ];
    for (idx, (i, js)) in cases.iter().enumerate() {
        let fp = family_polynomial(i, js, 4).map_err(|e| e.to_string())?;
        ensure(fp.pure_n_terms_vanish(), || format!("case {idx}: pure terms {:?}", fp.pure_n_coefficients))?;
        ensure(fp.table.entries().values().all(|v| *v >= int(0)), || format!("case {idx}: negative entry"))?;
        let base: Vec<MonomialIdeal> = js.iter().map(|j| (*j.ideal_at(1)).clone()).collect();
        let direct = mixed_multiplicities_ideals(&i.ideal_at(1), &base, &MultiplicityConfig::default())
            .map_err(|e| e.to_string())?;
        ensure(direct == fp.table, || format!("case {idx}: fit disagrees with the ideal table"))?;
    }
    Ok(format!("{} cases with non-trivial I", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 8] = [
        ("1 mixed-volume axioms", criterion_1, Duration::from_secs(60)),
        ("2 lattice bodies, exact table", criterion_2, Duration::from_secs(60)),
        ("3 scaling identity", criterion_3, Duration::from_secs(120)),
        ("4 power-family stabilization", criterion_4, Duration::from_secs(60)),
        ("5 colength identity and decomposition", criterion_5, Duration::from_secs(120)),
        ("6 m-primary polynomial", criterion_6, Duration::from_secs(120)),
        ("7 non-lattice convergence", criterion_7, Duration::from_secs(600)),
        ("8 no pure n-terms", criterion_8, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > budget;
        match (&outcome, over) {
            (Ok(detail), false) => println!("PASS criterion {name} ({elapsed:.2?}): {detail}"),
            (Ok(detail), true) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?} > {budget:?}): {detail}")
            }
            (Err(why), _) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {why}")
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
