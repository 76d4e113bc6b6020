use mixedvol_core::monomial::{quotient_dim, MonomialIdeal, Staircase};
use mixedvol_core::Error;
use proptest::prelude::*;

// Oracles work on raw generator lists and never call into the library's
// product or counting code.

fn in_ideal(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

fn naive_product(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u32>> {
    a.iter()
        .flat_map(|g| b.iter().map(move |h| g.iter().zip(h).map(|(x, y)| x + y).collect()))
        .collect()
}

fn box_points(d: usize, side: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                (0..=side).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

fn raw_gens(d: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    proptest::collection::vec(proptest::collection::vec(0u32..4, d), 1..5)
}

fn ideal_of(d: usize, gens: &[Vec<u32>]) -> MonomialIdeal {
    MonomialIdeal::new(d, gens.to_vec()).unwrap()
}

fn with_pure_powers(d: usize, mut gens: Vec<Vec<u32>>, powers: &[u32]) -> Vec<Vec<u32>> {
    for (k, &a) in powers.iter().enumerate().take(d) {
        let mut e = vec![0; d];
        e[k] = a;
        gens.push(e);
    }
    gens
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_are_minimal_and_membership_is_preserved(gens in raw_gens(3)) {
        let i = ideal_of(3, &gens);
        let g: Vec<Vec<u32>> = i.generators().iter().map(|e| e.exponents().to_vec()).collect();
        for (x, a) in g.iter().enumerate() {
            for (y, b) in g.iter().enumerate() {
                prop_assert!(x == y || !a.iter().zip(b).all(|(p, q)| p <= q));
            }
        }
        for m in box_points(3, 5) {
            prop_assert_eq!(i.contains_monomial(&m).unwrap(), in_ideal(&gens, &m));
        }
    }

    #[test]
    fn product_and_power_match_naive(a in raw_gens(3), b in raw_gens(3)) {
        let (ia, ib) = (ideal_of(3, &a), ideal_of(3, &b));
        let prod = ia.product(&ib).unwrap();
        let naive = naive_product(&a, &b);
        for m in box_points(3, 7) {
            prop_assert_eq!(prod.contains_monomial(&m).unwrap(), in_ideal(&naive, &m));
        }
        let cube = ia.power(3);
        let naive3 = naive_product(&naive_product(&a, &a), &a);
        for m in box_points(3, 9) {
            prop_assert_eq!(cube.contains_monomial(&m).unwrap(), in_ideal(&naive3, &m));
        }
    }

    #[test]
    fn equigenerated_products_match_naive(
        a in proptest::collection::vec(proptest::collection::vec(0u32..4, 2), 1..6),
        b in proptest::collection::vec(proptest::collection::vec(0u32..3, 2), 1..6),
    ) {
        // Homogenize to degree 4 and 3 with a third variable.
        let lift = |gens: &[Vec<u32>], deg: u32| -> Vec<Vec<u32>> {
            gens.iter()
                .filter(|g| g[0] + g[1] <= deg)
                .map(|g| vec![g[0], g[1], deg - g[0] - g[1]])
                .collect()
        };
        let (la, lb) = (lift(&a, 4), lift(&b, 3));
        prop_assume!(!la.is_empty() && !lb.is_empty());
        let prod = ideal_of(3, &la).product(&ideal_of(3, &lb)).unwrap();
        prop_assert_eq!(prod.generating_degree(), Some(7));
        let naive = naive_product(&la, &lb);
        for m in box_points(3, 7) {
            prop_assert_eq!(prod.contains_monomial(&m).unwrap(), in_ideal(&naive, &m));
        }
    }

    #[test]
    fn quotient_dim_matches_enumeration(
        a in raw_gens(3),
        extra in raw_gens(3),
        bound in 0i64..9,
    ) {
        let ia = ideal_of(3, &a);
        let ib = ia.product(&ideal_of(3, &extra)).unwrap();
        let b_raw = naive_product(&a, &extra);
        let expected = box_points(3, bound as u32)
            .into_iter()
            .filter(|m| m.iter().sum::<u32>() as i64 <= bound)
            .filter(|m| in_ideal(&a, m) && !in_ideal(&b_raw, m))
            .count() as u64;
        prop_assert_eq!(quotient_dim(&ia, &ib, bound).unwrap(), expected);
    }

    #[test]
    fn smallest_mpower_inside_is_sharp(
        gens in raw_gens(3),
        powers in proptest::collection::vec(1u32..5, 3),
    ) {
        let all = with_pure_powers(3, gens, &powers);
        let i = ideal_of(3, &all);
        prop_assert!(i.is_m_primary());
        let c = i.smallest_mpower_inside().unwrap();
        let degree_inside = |k: u32| {
            box_points(3, k)
                .into_iter()
                .filter(|m| m.iter().sum::<u32>() == k)
                .all(|m| in_ideal(&all, &m))
        };
        prop_assert!(degree_inside(c));
        prop_assert!(c == 0 || !degree_inside(c - 1));
    }

    #[test]
    fn staircase_counts_split_the_simplex(gens in raw_gens(2), bound in 0u32..12) {
        let i = ideal_of(2, &gens);
        let s = Staircase::new(&i, bound);
        let total = (bound as u64 + 1) * (bound as u64 + 2) / 2;
        prop_assert_eq!(s.count_members() + s.count_standard(), total);
        prop_assert_eq!(s.members().len() as u64, s.count_members());
    }
}

#[test]
fn maximal_ideal_powers() {
    let m = MonomialIdeal::maximal(3);
    assert_eq!(m.power(2), MonomialIdeal::maximal_power(3, 2));
    assert_eq!(m.power(4).generators().len(), 15);
    assert_eq!(m.power(0), MonomialIdeal::unit(3));
    assert_eq!(m.smallest_mpower_inside().unwrap(), 1);
}

#[test]
fn quotient_dim_errors() {
    let a = MonomialIdeal::new(2, vec![vec![1, 0]]).unwrap();
    let b = MonomialIdeal::maximal(2);
    assert!(matches!(quotient_dim(&a, &b, 3), Err(Error::NotContained { .. })));
    assert!(matches!(quotient_dim(&b, &a, -1), Err(Error::NegativeBound(-1))));
    assert!(MonomialIdeal::new(2, vec![vec![1, 0, 0]]).is_err());
    assert!(matches!(
        MonomialIdeal::new(2, vec![vec![1, 0]]).unwrap().smallest_mpower_inside(),
        Err(Error::NotMPrimary { .. })
    ));
}
