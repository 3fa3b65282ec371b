use proptest::prelude::*;

use trinet::cubics::{cubic_space_through, third_intersection};
use trinet::families::{construct_conic_line, construct_triangular};
use trinet::geometry::{collinear, incident, join, meet};
use trinet::nets::{identify_realized_group, verify_net};
use trinet::search::canonical_representative;
use trinet::{Cubic, CubicGroup, PrimeField, ProjPoint, Projectivity};

const PRIMES: [u64; 5] = [7, 11, 13, 31, 101];

fn point(f: &PrimeField, c: [i64; 3]) -> Option<ProjPoint> {
    ProjPoint::new(f, c).ok()
}

fn matrix() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-50i64..50))
}

proptest! {
    #[test]
    fn join_and_meet_are_dual(pi in 0..PRIMES.len(), a in prop::array::uniform3(-50i64..50), b in prop::array::uniform3(-50i64..50), c in prop::array::uniform3(-50i64..50)) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let (Some(a), Some(b), Some(c)) = (point(&f, a), point(&f, b), point(&f, c)) else { return Ok(()) };
        prop_assume!(a != b && b != c && a != c);
        let l = join(&f, &a, &b).unwrap();
        prop_assert!(incident(&f, &a, &l) && incident(&f, &b, &l));
        prop_assert_eq!(incident(&f, &c, &l), collinear(&f, &a, &b, &c));
        let m = join(&f, &a, &c).unwrap();
        if l != m {
            prop_assert_eq!(meet(&f, &l, &m).unwrap(), a);
        }
    }

    #[test]
    fn projectivities_preserve_incidence(pi in 0..PRIMES.len(), m in matrix(), a in prop::array::uniform3(-50i64..50), b in prop::array::uniform3(-50i64..50), c in prop::array::uniform3(-50i64..50)) {
        let f = PrimeField::new(PRIMES[pi]).unwrap();
        let Ok(t) = Projectivity::new(&f, m) else { return Ok(()) };
        let (Some(a), Some(b), Some(c)) = (point(&f, a), point(&f, b), point(&f, c)) else { return Ok(()) };
        prop_assume!(a != b);
        let (ta, tb, tc) = (t.apply(&f, &a), t.apply(&f, &b), t.apply(&f, &c));
        prop_assert_eq!(collinear(&f, &a, &b, &c), collinear(&f, &ta, &tb, &tc));
        let l = join(&f, &a, &b).unwrap();
        prop_assert_eq!(t.apply_line(&f, &l), join(&f, &ta, &tb).unwrap());
        prop_assert_eq!(t.inverse(&f).apply(&f, &ta), a);
    }

    #[test]
    fn nets_survive_projectivities(n in 2usize..7, a in 1i64..13, b in 1i64..13, m in matrix(), conic in any::<bool>()) {
        let f = PrimeField::new(13).unwrap();
        prop_assume!(12 % n == 0);
        let net = if conic {
            match construct_conic_line(&f, n, a, b) { Ok(net) => net, Err(_) => return Ok(()) }
        } else {
            construct_triangular(&f, n, a, b).unwrap()
        };
        let Ok(t) = Projectivity::new(&f, m) else { return Ok(()) };
        let moved = net.transform(&t);
        prop_assert!(verify_net(&moved).unwrap().is_net);
        prop_assert!(moved.labeling_holds());
        let (g, _) = identify_realized_group(&moved).unwrap().unwrap();
        prop_assert_eq!(g.describe(), format!("C{n}"));
        let (x, y) = (canonical_representative(&moved).unwrap(), canonical_representative(&net).unwrap());
        prop_assert_eq!(x.components(), y.components());
    }

    #[test]
    fn chord_tangent_law_on_random_curves(a in 0i64..31, b in 0i64..31, i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let f = PrimeField::new(31).unwrap();
        let curve = Cubic::new(&f, [-1, 0, 0, 0, 0, -a, 0, 1, 0, -b]).unwrap();
        prop_assume!(curve.singular_points(&f).is_empty());
        let g = CubicGroup::with_default_identity(&f, &curve).unwrap();
        let (p, q) = (i.index(g.order()), j.index(g.order()));
        let r = third_intersection(&f, &curve, &g.point(p), &g.point(q)).unwrap();
        let r = g.index_of(&r).unwrap();
        prop_assert_eq!(g.add(g.add(p, q), r), 0);
        prop_assert_eq!(g.add(p, q), g.add(q, p));
    }

    #[test]
    fn cubic_space_contains_its_points(c in prop::collection::vec(prop::array::uniform3(0i64..13), 1..9)) {
        let f = PrimeField::new(13).unwrap();
        let pts: Vec<ProjPoint> = c.into_iter().filter_map(|v| point(&f, v)).collect();
        let basis = cubic_space_through(&f, &pts);
        prop_assert!(basis.len() >= 10usize.saturating_sub(pts.len()));
        for cubic in &basis {
            prop_assert!(pts.iter().all(|p| cubic.contains(&f, p)));
        }
    }
}
