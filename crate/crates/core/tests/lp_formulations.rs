use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use recourse_core::generate::{random_lp, LpParams};
use recourse_core::lp::{check_duality, solve, LpBuilder, Relation, Sense};
use recourse_core::oracles::{enumerate_u1_vertices, oracle_adversarial_lp_u1};
use recourse_core::robinc_lp::*;
use recourse_core::LpInstance;

/// Minimum of `c'x` over `{x >= 0 : Ax = b}` by trying every basis.
fn basis_enumeration(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Option<f64> {
    let (m, n) = (a.len(), c.len());
    let mut best: Option<f64> = None;
    let mut cols: Vec<usize> = (0..m).collect();
    loop {
        let mut t: Vec<Vec<f64>> = (0..m)
            .map(|i| {
                let mut r: Vec<f64> = cols.iter().map(|&j| a[i][j]).collect();
                r.push(b[i]);
                r
            })
            .collect();
        let mut ok = true;
        for col in 0..m {
            let piv = (col..m).max_by(|&x, &y| t[x][col].abs().total_cmp(&t[y][col].abs())).unwrap();
            if t[piv][col].abs() < 1e-9 {
                ok = false;
                break;
            }
            t.swap(col, piv);
            for r in 0..m {
                if r != col {
                    let f = t[r][col] / t[col][col];
                    for k in col..=m {
                        t[r][k] -= f * t[col][k];
                    }
                }
            }
        }
        if ok {
            let xb: Vec<f64> = (0..m).map(|i| t[i][m] / t[i][i]).collect();
            if xb.iter().all(|v| *v >= -1e-9) {
                let v: f64 = cols.iter().zip(&xb).map(|(&j, x)| c[j] * x).sum();
                best = Some(best.map_or(v, |b: f64| b.min(v)));
            }
        }
        // next combination
        let mut i = m;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if cols[i] < n - m + i {
                cols[i] += 1;
                for k in i + 1..m {
                    cols[k] = cols[k - 1] + 1;
                }
                break;
            }
        }
    }
}

fn lp_instance(seed: u64, n: usize, m: usize) -> LpInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_lp(
        &mut rng,
        &LpParams {
            num_vars: n,
            num_constraints: m,
            ..Default::default()
        },
    )
}

#[test]
fn assignment_lp_matches_permutations() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..20 {
        let cost: Vec<Vec<f64>> = (0..3).map(|_| (0..3).map(|_| rng.gen_range(0.0..10.0)).collect()).collect();
        let mut b = LpBuilder::new(Sense::Minimize);
        for row in &cost {
            for &c in row {
                b.add_var(c, 0.0, f64::INFINITY);
            }
        }
        for i in 0..3 {
            b.add_row((0..3).map(|j| (3 * i + j, 1.0)).collect(), Relation::Eq, 1.0);
            b.add_row((0..3).map(|j| (3 * j + i, 1.0)).collect(), Relation::Eq, 1.0);
        }
        let lp = b.build();
        let res = solve(&lp).unwrap();
        assert!(check_duality(&lp, &res).ok);
        let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let best = perms
            .iter()
            .map(|p| (0..3).map(|i| cost[i][p[i]]).sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        assert!((res.objective - best).abs() < 1e-9);
    }
}

#[test]
fn simplex_matches_basis_enumeration() {
    for seed in 0..300 {
        let n = 2 + (seed as usize % 5);
        let inst = lp_instance(seed, n, (1 + (seed as usize % 3)).min(n));
        let mut b = LpBuilder::new(Sense::Minimize);
        b.add_vars(&inst.nominal_cost, 0.0, f64::INFINITY);
        for (row, &rhs) in inst.matrix.iter().zip(&inst.rhs) {
            b.add_row(row.iter().copied().enumerate().collect(), Relation::Eq, rhs);
        }
        let lp = b.build();
        let res = solve(&lp).unwrap();
        let brute = basis_enumeration(&inst.matrix, &inst.rhs, &inst.nominal_cost).unwrap();
        assert!(res.is_optimal(), "seed {seed}");
        assert!((res.objective - brute).abs() < 1e-7 * (1.0 + brute.abs()), "seed {seed}: {} vs {brute}", res.objective);
        let rep = check_duality(&lp, &res);
        assert!(rep.ok, "seed {seed}: {:?}", rep.failures);
    }
}

#[test]
fn dual_chain_agrees() {
    for seed in 0..200 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let n = rng.gen_range(2..=8);
        let m = rng.gen_range(1..=5.min(n));
        let inst = lp_instance(seed, n, m);
        let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let x = feasible_point(&inst, Some(&dir)).unwrap();
        let k = rng.gen_range(0.0..3.0);
        let gamma = rng.gen_range(0.0..3.0);
        let (adv, cert) = solve_adversarial_lp_u1(&inst, &x, k, gamma).unwrap();
        let c = inst.realized_cost(&cert.delta);
        let primal = solve_incremental_lp(&inst, &x, k, &c).unwrap();
        let dual = solve_incremental_dual_lp(&inst, &x, k, &c).unwrap();
        let tol = 1e-6 * (1.0 + adv.abs());
        assert!((primal.objective - dual.objective).abs() < tol, "seed {seed}");
        assert!((primal.objective - adv).abs() < tol, "seed {seed}: {} vs {adv}", primal.objective);
        assert!(primal.dual.max_violation(&inst.matrix, &c) < 1e-7, "seed {seed}");
        assert!(dual.max_violation(&inst.matrix, &c) < 1e-7, "seed {seed}");
        assert!(cert.delta_violation(&inst.deviation, gamma) < 1e-9);
        assert!((cert.primal_objective - cert.dual_objective).abs() < tol);
        let budget: f64 = primal.z_plus.iter().chain(&primal.z_minus).sum();
        assert!(budget <= k + 1e-7);
        assert!(primal.z_plus.iter().zip(&primal.z_minus).all(|(p, q)| p.min(*q) < 1e-12));
    }
}

#[test]
fn adversary_matches_vertex_enumeration() {
    for seed in 0..60 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(1..=3.min(n));
        let inst = lp_instance(700 + seed, n, m);
        let x = feasible_point(&inst, None).unwrap();
        let k = [0.0, 0.5, 1.0, 2.0][seed as usize % 4];
        let gamma = [0.0, 0.7, 1.0, 2.5][(seed as usize / 4) % 4];
        let (adv, _) = solve_adversarial_lp_u1(&inst, &x, k, gamma).unwrap();
        let oracle = oracle_adversarial_lp_u1(&inst, &x, k, gamma).unwrap();
        assert!((adv - oracle).abs() < 1e-6 * (1.0 + oracle.abs()), "seed {seed}: {adv} vs {oracle}");
        let at_vertices = enumerate_u1_vertices(&inst.deviation, gamma)
            .unwrap()
            .iter()
            .map(|d| solve_incremental_lp(&inst, &x, k, &inst.realized_cost(d)).unwrap().objective)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(at_vertices <= adv + 1e-7);
    }
}

#[test]
fn robinc_is_not_beaten_by_sampled_points() {
    for seed in 0..40 {
        let mut rng = ChaCha8Rng::seed_from_u64(9000 + seed);
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(1..=3.min(n));
        let inst = lp_instance(seed + 77, n, m);
        let (k, gamma) = (rng.gen_range(0.0..2.0), rng.gen_range(0.0..2.0));
        let sol = solve_robinc_lp(&inst, k, gamma).unwrap();
        for _ in 0..20 {
            let dir: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
            let x = feasible_point(&inst, Some(&dir)).unwrap();
            let (adv, _) = solve_adversarial_lp_u1(&inst, &x, k, gamma).unwrap();
            let v = recourse_core::lp::dot(&inst.initial_cost, &x) + adv;
            assert!(v >= sol.value - 1e-6, "seed {seed}: {v} < {}", sol.value);
        }
    }
}

#[test]
fn robinc_without_recourse_is_robust_lp() {
    // With K = 0 and d = 0 the problem is min c̄'x + max δ'x.
    for seed in 0..20 {
        let mut inst = lp_instance(seed + 300, 4, 2);
        inst.initial_cost = vec![0.0; 4];
        let gamma = 1.2;
        let sol = solve_robinc_lp(&inst, 0.0, gamma).unwrap();
        let (adv, _) = solve_adversarial_lp_u1(&inst, &sol.x, 0.0, gamma).unwrap();
        assert!((sol.value - adv).abs() < 1e-7);
        let worst = enumerate_u1_vertices(&inst.deviation, gamma)
            .unwrap()
            .iter()
            .map(|d| recourse_core::lp::dot(&inst.realized_cost(d), &sol.x))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((worst - sol.value).abs() < 1e-6);
    }
}

#[test]
fn monotone_in_budgets_and_sandwiched() {
    let grid = [0.0, 0.5, 1.0, 2.0];
    for seed in 0..15 {
        let inst = lp_instance(seed + 40, 5, 2);
        let x = feasible_point(&inst, None).unwrap();
        let hi: Vec<f64> = inst.nominal_cost.iter().zip(&inst.deviation).map(|(a, b)| a + b).collect();
        for &k in &grid {
            let mut prev = f64::NEG_INFINITY;
            for &g in &grid {
                let (v, _) = solve_adversarial_lp_u1(&inst, &x, k, g).unwrap();
                assert!(v >= prev - 1e-7);
                prev = v;
                let lo = solve_incremental_lp(&inst, &x, k, &inst.nominal_cost).unwrap().objective;
                let up = solve_incremental_lp(&inst, &x, k, &hi).unwrap().objective;
                assert!(lo - 1e-7 <= v && v <= up + 1e-7);
            }
        }
        for &g in &grid {
            let mut prev = f64::INFINITY;
            for &k in &grid {
                let (v, _) = solve_adversarial_lp_u1(&inst, &x, k, g).unwrap();
                assert!(v <= prev + 1e-7);
                prev = v;
            }
        }
    }
}

#[test]
fn discrete_adversary_is_weaker_with_uniform_deviation() {
    for seed in 0..15 {
        let mut inst = lp_instance(seed + 90, 5, 2);
        inst.deviation = vec![1.5; 5];
        let x = feasible_point(&inst, None).unwrap();
        for g in 0..3usize {
            let (u2, _) = solve_adversarial_u2_bruteforce(&inst, &x, 1.0, g).unwrap();
            let (u1, _) = solve_adversarial_lp_u1(&inst, &x, 1.0, 1.5 * g as f64).unwrap();
            assert!(u2 <= u1 + 1e-7);
        }
    }
}

#[test]
fn u2_enumeration_over_four_variables() {
    let inst = lp_instance(4, 4, 2);
    let x = feasible_point(&inst, None).unwrap();
    let (v, delta) = solve_adversarial_u2_bruteforce(&inst, &x, 0.5, 1).unwrap();
    let mut best = solve_incremental_lp(&inst, &x, 0.5, &inst.nominal_cost).unwrap().objective;
    for j in 0..4 {
        let mut c = inst.nominal_cost.clone();
        c[j] += inst.deviation[j];
        best = best.max(solve_incremental_lp(&inst, &x, 0.5, &c).unwrap().objective);
    }
    assert!((v - best).abs() < 1e-9);
    assert!(delta.iter().sum::<f64>() <= 1.0);
}

#[test]
fn generous_budget_reaches_nominal_optimum() {
    for seed in 0..20 {
        let inst = lp_instance(seed + 500, 5, 3);
        let x = feasible_point(&inst, Some(&[1.0, 0.0, 0.3, 0.2, 0.9])).unwrap();
        let opt = {
            let mut b = LpBuilder::new(Sense::Minimize);
            b.add_vars(&inst.nominal_cost, 0.0, f64::INFINITY);
            for (row, &rhs) in inst.matrix.iter().zip(&inst.rhs) {
                b.add_row(row.iter().copied().enumerate().collect(), Relation::Eq, rhs);
            }
            solve(&b.build()).unwrap()
        };
        let k = x.iter().sum::<f64>() + opt.primal.iter().sum::<f64>();
        let inc = solve_incremental_lp(&inst, &x, k, &inst.nominal_cost).unwrap();
        assert!((inc.objective - opt.objective).abs() < 1e-7 * (1.0 + opt.objective.abs()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engine_is_deterministic(seed in 0u64..1000) {
        let inst = lp_instance(seed, 6, 3);
        let x = feasible_point(&inst, None).unwrap();
        let f = adversarial_lp(&inst, &x, 1.0, 1.0);
        let a = solve(&f.lp).unwrap();
        let b = solve(&f.lp).unwrap();
        prop_assert_eq!(a.primal, b.primal);
        prop_assert_eq!(a.iterations, b.iterations);
    }

    #[test]
    fn every_formulation_certifies(seed in 0u64..1000, k in 0.0f64..3.0, gamma in 0.0f64..3.0) {
        let inst = lp_instance(seed, 5, 2);
        let x = feasible_point(&inst, None).unwrap();
        for f in [
            incremental_primal_lp(&inst, &x, k, &inst.nominal_cost),
            incremental_dual_lp(&inst, &x, k, &inst.nominal_cost),
            adversarial_lp(&inst, &x, k, gamma),
            adversarial_dual_lp(&inst, &x, k, gamma),
            robinc_lp(&inst, k, gamma),
        ] {
            let res = solve(&f.lp).unwrap();
            let rep = check_duality(&f.lp, &res);
            prop_assert!(rep.ok, "{:?}", rep.failures);
        }
    }
}

