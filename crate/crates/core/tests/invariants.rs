use proptest::prelude::*;

use pointsep::approx::{approx_mult_add, approx_plus_k, approx_plus_one, ApproxError, ApproxParams, ProbeMode};
use pointsep::exact::{exact_solve, exhaustive_oracle, separation_check};
use pointsep::geometry::{crossing_parity_polyline, rat, ratio, Point, Polyline, Segment};
use pointsep::instance_io::{format_decimal, generate, parse_decimal, parse_file, serialize_instance, Family, GenParams};
use pointsep::lift::{lifted_adjacent, witness_adjacent, Instance, LiftedInstance, LiftedVertex, Sheet};
use pointsep::sssp::{bfs, make_oracle, ObjectSet, OracleKind};

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

fn instance(family: Family, n: usize, seed: u64) -> Instance {
    generate(family, n, seed, &GenParams::for_size(n)).normalize().unwrap().0
}

fn vertices(n: usize) -> impl Iterator<Item = LiftedVertex> {
    (0..2 * n).map(LiftedVertex::from_id)
}

fn point((x, y): (i64, i64)) -> Point {
    Point::new(rat(x), rat(y))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn files_round_trip(family in family(), n in 1usize..15, seed in any::<u64>()) {
        let file = generate(family, n, seed, &GenParams::for_size(n));
        prop_assert_eq!(parse_file(&serialize_instance(&file)).unwrap(), file);
    }

    #[test]
    fn generation_is_deterministic(family in family(), n in 1usize..15, seed in any::<u64>()) {
        let p = GenParams::for_size(n);
        prop_assert_eq!(generate(family, n, seed, &p), generate(family, n, seed, &p));
    }

    #[test]
    fn decimals_round_trip(num in -100_000i64..100_000, twos in 0u32..6, fives in 0u32..6, other in 1i64..5) {
        let r = ratio(num, 2i64.pow(twos) * 5i64.pow(fives) * other);
        match format_decimal(&r) {
            Some(text) => prop_assert_eq!(parse_decimal(&text), Some(r)),
            None => prop_assert!(other == 3 && num % 3 != 0),
        }
    }

    #[test]
    fn adjacency_is_symmetric_and_flip_invariant(family in family(), n in 2usize..10, seed in any::<u64>()) {
        let li = LiftedInstance::new(instance(family, n, seed)).unwrap();
        for u in vertices(li.n()) {
            for v in vertices(li.n()) {
                let a = lifted_adjacent(&li, u, v);
                prop_assert_eq!(a, lifted_adjacent(&li, v, u));
                prop_assert_eq!(a, lifted_adjacent(&li, u.flip(), v.flip()));
            }
        }
    }

    #[test]
    fn fragments_agree_with_parity_witnesses(family in family(), n in 2usize..10, seed in any::<u64>()) {
        let li = LiftedInstance::new(instance(family, n, seed).filled_view()).unwrap();
        for u in vertices(li.n()) {
            for v in vertices(li.n()) {
                if u.object != v.object {
                    prop_assert_eq!(lifted_adjacent(&li, u, v), witness_adjacent(&li, u, v), "{:?} {:?}", u, v);
                }
            }
        }
    }

    #[test]
    fn bfs_tree_is_consistent(family in family(), n in 1usize..12, seed in any::<u64>()) {
        let li = LiftedInstance::new(instance(family, n, seed)).unwrap();
        for c in 0..li.n() {
            let minus = bfs(&li, LiftedVertex::new(c, Sheet::Minus), OracleKind::Explicit).unwrap();
            let plus = bfs(&li, LiftedVertex::new(c, Sheet::Plus), OracleKind::Explicit).unwrap();
            prop_assert_eq!(minus.dist_to(minus.source), Some(0));
            for v in vertices(li.n()) {
                prop_assert_eq!(minus.dist_to(v), plus.dist_to(v.flip()));
                if let Some(p) = minus.parent[v.id()] {
                    prop_assert!(lifted_adjacent(&li, p, v));
                    prop_assert_eq!(minus.dist_to(p).map(|d| d + 1), minus.dist_to(v));
                }
            }
        }
    }

    #[test]
    fn specialized_oracles_match_explicit(rect in any::<bool>(), n in 1usize..20, seed in any::<u64>()) {
        let (family, kind) = if rect {
            (Family::Rectilinear, OracleKind::Rectilinear)
        } else {
            (Family::Disks, OracleKind::DiskGrid { cell_size: None })
        };
        let li = LiftedInstance::new(instance(family, n, seed)).unwrap();
        for src in vertices(li.n()) {
            let a = bfs(&li, src, OracleKind::Explicit).unwrap();
            let b = bfs(&li, src, kind).unwrap();
            prop_assert_eq!(a.dist, b.dist);
        }
    }

    #[test]
    fn extracted_vertices_are_never_returned_again(
        family in prop::sample::select(vec![Family::Disks, Family::Rectilinear, Family::Segments]),
        n in 1usize..20,
        seed in any::<u64>(),
    ) {
        let li = LiftedInstance::new(instance(family, n, seed)).unwrap();
        let mut oracle = make_oracle(&li, &ObjectSet::all(li.n()), OracleKind::Auto).unwrap();
        let mut seen = vec![false; 2 * li.n()];
        for u in vertices(li.n()) {
            if !seen[u.id()] {
                oracle.remove(u);
                seen[u.id()] = true;
            }
            let out = oracle.extract_adjacent(u);
            prop_assert!(out.windows(2).all(|w| w[0].id() < w[1].id()));
            for v in out {
                prop_assert!(lifted_adjacent(&li, u, v));
                prop_assert!(!seen[v.id()], "{:?} returned twice", v);
                seen[v.id()] = true;
            }
        }
    }

    #[test]
    fn optimum_separates_and_matches_exhaustive(family in family(), n in 1usize..9, seed in any::<u64>()) {
        let li = LiftedInstance::new(instance(family, n, seed)).unwrap();
        let res = exact_solve(&li, OracleKind::Explicit).unwrap();
        prop_assert_eq!(res.size(), exhaustive_oracle(&li, 14).unwrap().size());
        prop_assert_eq!(res.size(), res.per_object_sizes.iter().flatten().min().copied());
        if let Some(opt) = &res.optimum {
            prop_assert!(separation_check(&li, &opt.objects));
            let all: Vec<usize> = (0..li.n()).collect();
            prop_assert!(separation_check(&li, &all));
        }
    }

    #[test]
    fn approximations_separate_within_bounds(n in 2usize..16, seed in any::<u64>(), k in 1usize..4) {
        let inst = instance(Family::Disks, n, seed);
        let li = LiftedInstance::new(inst.clone()).unwrap();
        let opt = exact_solve(&li, OracleKind::Explicit).unwrap().size();
        let params = ApproxParams { probe: ProbeMode::Derandomized, seed, ..ApproxParams::default() };
        let runs = [
            (approx_plus_one(&inst, &params, OracleKind::Auto), 1),
            (approx_mult_add(&inst, 1.0, OracleKind::Auto), opt.unwrap_or(0) + 1),
            (approx_plus_k(&inst, k, OracleKind::Auto), k),
        ];
        for (run, slack) in runs {
            match (run, opt) {
                (Ok(out), Some(opt)) => {
                    prop_assert!(separation_check(&li, &out.set.objects));
                    prop_assert!(out.set.len() >= opt && out.set.len() <= opt + slack);
                }
                (Err(ApproxError::Infeasible), None) => {}
                (other, opt) => prop_assert!(false, "{:?} with OPT {:?}", other.map(|o| o.set), opt),
            }
        }
    }

    #[test]
    fn crossing_parity_adds_over_concatenation(
        pts in prop::collection::vec((-20i64..20, -20i64..20), 3..8),
        split in 1usize..6,
        barrier in ((-20i64..20, -20i64..20), (-20i64..20, -20i64..20)),
    ) {
        let split = split.min(pts.len() - 2);
        let all: Vec<Point> = pts.iter().copied().map(point).collect();
        prop_assume!(all.windows(2).all(|w| w[0] != w[1]) && barrier.0 != barrier.1);
        let (Ok(whole), Ok(head), Ok(tail)) = (
            Polyline::new(all.clone()),
            Polyline::new(all[..=split].to_vec()),
            Polyline::new(all[split..].to_vec()),
        ) else {
            return Err(TestCaseError::reject("invalid polyline"));
        };
        let bar = Segment::new(point(barrier.0), point(barrier.1));
        let parity = |p: &Polyline| crossing_parity_polyline(p, &bar);
        let (Ok(w), Ok(h), Ok(t)) = (parity(&whole), parity(&head), parity(&tail)) else {
            return Err(TestCaseError::reject("degenerate"));
        };
        prop_assert_eq!(w, h ^ t);
    }
}
