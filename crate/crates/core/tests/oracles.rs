use nuobdd::bounds::detwidth::{det_min_width_fixed_order, minimal_obdd};
use nuobdd::bounds::span::{exact_prefix_family, span_dimension, span_dimension_float};
use nuobdd::compose::{intersection, union};
use nuobdd::constructions::*;
use nuobdd::{validate, Backend, BitString, BooleanFunction, Evaluator, LeveledProgram, Mode, Semantics, VariableOrder};

fn ones(x: u64) -> usize {
    x.count_ones() as usize
}

#[test]
fn families_match_counting_oracles() {
    for n in 1..=10 {
        let exact: Vec<_> = (0..=n).map(|k| BooleanFunction::exact(n, k).unwrap()).collect();
        let not_exact: Vec<_> = (0..=n).map(|k| BooleanFunction::not_exact(n, k).unwrap()).collect();
        let modulo: Vec<_> = (1..=n).map(|p| BooleanFunction::modulo(n, p).unwrap()).collect();
        let and = BooleanFunction::and(n);
        for x in 0..1u64 << n {
            for k in 0..=n {
                assert_eq!(exact[k].eval_index(x), ones(x) == k);
                assert_eq!(not_exact[k].eval_index(x), ones(x) != k);
            }
            for p in 1..=n {
                assert_eq!(modulo[p - 1].eval_index(x), ones(x).is_multiple_of(p));
            }
            assert_eq!(and.eval_index(x), ones(x) == n);
        }
    }
}

#[test]
fn not_perm_matches_permutation_count() {
    // m! permutation matrices are the only rejected inputs
    for (m, perms) in [(1, 1), (2, 2), (3, 6)] {
        let f = BooleanFunction::not_perm(m).unwrap();
        let rejected = (0..1u64 << (m * m)).filter(|&x| !f.eval_index(x)).count();
        assert_eq!(rejected, perms);
        let identity: BitString = (0..m * m).map(|i| i % (m + 1) == 0).collect::<Vec<_>>().into();
        assert!(!f.evaluate(&identity).unwrap());
    }
}

#[test]
fn restriction_agrees_with_split_evaluation() {
    let f = BooleanFunction::modulo(6, 4).unwrap();
    for order in [VariableOrder::natural(6), VariableOrder::new(vec![4, 1, 6, 2, 5, 3]).unwrap()] {
        for cut in 1..6 {
            for prefix in BitString::all(cut) {
                let rho = nuobdd::SubfunctionRestriction::new(order.clone(), cut, prefix.clone()).unwrap();
                let g = f.restrict(&rho).unwrap();
                for gamma in BitString::all(6 - cut) {
                    assert_eq!(g.evaluate(&gamma).unwrap(), f.eval_split(&order, &prefix, &gamma).unwrap());
                }
            }
        }
    }
}

fn shipped(n: usize) -> Vec<(LeveledProgram, BooleanFunction, Mode)> {
    let mut v = Vec::new();
    for k in 0..=n {
        let e = BooleanFunction::exact(n, k).unwrap();
        v.push((build_exact_unitary(n, k).unwrap(), e.clone(), Mode::Exact));
        v.push((build_exact_deterministic(n, k).unwrap(), e, Mode::Deterministic));
        v.push((build_not_exact(n, k).unwrap(), BooleanFunction::not_exact(n, k).unwrap(), Mode::Nondeterministic));
    }
    for p in 1..=n {
        v.push((build_mod(n, p).unwrap(), BooleanFunction::modulo(n, p).unwrap(), Mode::Exact));
    }
    v.push((build_and_nobdd(n).unwrap(), BooleanFunction::and(n), Mode::Nondeterministic));
    v
}

#[test]
fn float_backend_tracks_exact_probabilities() {
    for n in 1..=7 {
        for (p, _, _) in shipped(n) {
            let exact = Evaluator::new(&p, Backend::Exact).unwrap();
            let float = Evaluator::new(&p, Backend::Float).unwrap();
            for x in 0..1u64 << n {
                let (a, b) = (exact.probability_index(x), float.probability_index(x));
                assert!(a.is_certified() && !b.is_certified());
                assert!((a.to_f64() - b.to_f64()).abs() < 1e-9, "{} program n={n} x={x}", p.semantics());
                assert_eq!(exact.accepts_index(x).accepted, float.accepts_index(x).accepted);
            }
        }
    }
}

/// Accepts iff some path through the 0-1 transition graph ends in an accepting state.
fn some_path_accepts(p: &LeveledProgram, input: &BitString) -> bool {
    fn walk(p: &LeveledProgram, input: &BitString, level: usize, state: usize) -> bool {
        if level == p.n() {
            return p.is_accepting(state);
        }
        let var = p.order().var_at(level + 1);
        let m = p.levels()[level].matrix(input.bit(var));
        (0..p.width()).any(|r| !m.entry(r, state).is_zero() && walk(p, input, level + 1, r))
    }
    (0..p.width()).any(|q| !p.initial()[q].is_zero() && walk(p, input, 0, q))
}

#[test]
fn reachable_sets_match_path_enumeration() {
    for n in 1..=6 {
        let and = build_and_nobdd(n).unwrap();
        let det = nuobdd::compose::lift(&build_mod(n, 2.min(n)).unwrap(), Semantics::Nondeterministic).unwrap();
        let programs = [and.clone(), det.clone(), union(&and, &det).unwrap(), intersection(&and, &det).unwrap()];
        for p in &programs {
            let ev = Evaluator::new(p, Backend::Exact).unwrap();
            for input in BitString::all(n) {
                assert_eq!(!ev.probability(&input).unwrap().is_zero(), some_path_accepts(p, &input));
            }
        }
    }
}

#[test]
fn constructions_and_compositions_validate() {
    for n in 1..=6 {
        let progs = shipped(n);
        for (p, f, mode) in &progs {
            assert!(validate(p).is_empty(), "{f}");
            assert!(nuobdd::computes_function(p, f, *mode).unwrap().passed(), "{f}");
        }
        for (a, fa, _) in &progs {
            for (b, fb, _) in &progs {
                if let Ok(u) = union(a, b) {
                    assert!(validate(&u).is_empty(), "{fa} | {fb}");
                }
                if let Ok(i) = intersection(a, b) {
                    assert!(validate(&i).is_empty(), "{fa} & {fb}");
                }
            }
        }
    }
}

#[test]
fn det_width_against_constructions() {
    for n in 2..=8 {
        let order = VariableOrder::natural(n);
        for k in 0..=n {
            let f = BooleanFunction::exact(n, k).unwrap();
            let w = det_min_width_fixed_order(&f, &order).unwrap();
            let d = build_exact_deterministic(n, k).unwrap().width();
            assert!(w <= d);
            // the construction is minimal except on the balanced slice
            if 2 * k != n {
                assert_eq!(w, d, "n={n} k={k}");
            } else {
                assert_eq!(w + 1, d, "n={n} k={k}");
            }
            let min = minimal_obdd(&f, &order).unwrap();
            assert_eq!(min.width(), w);
            assert!(nuobdd::computes_function(&min, &f, Mode::Deterministic).unwrap().passed());
        }
        for p in 1..=n {
            let f = BooleanFunction::modulo(n, p).unwrap();
            let w = det_min_width_fixed_order(&f, &order).unwrap();
            // near p = n the dead residues merge, which a permutation program cannot do
            assert!(w <= p);
            if 2 * p <= n {
                assert_eq!(w, p, "n={n} p={p}");
            }
        }
    }
}

#[test]
fn exact_and_float_rank_agree_on_constructions() {
    for n in 1..=9 {
        for k in 0..=n {
            let p = build_exact_unitary(n, k).unwrap();
            let (level, prefixes) = exact_prefix_family(n, k);
            let e = span_dimension(&p, level, &prefixes).unwrap();
            let f = span_dimension_float(&p, level, &prefixes).unwrap();
            assert_eq!(e.rank, f.rank, "n={n} k={k}");
            assert!(e.certified && !f.certified);
            assert!(e.rank <= p.width());
        }
    }
}
