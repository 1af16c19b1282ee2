//! LP postconditions checked against enumeration.

use super::{all_min_covers, lp_optima, oracle_vc};
use branchvc::lp::{extreme_solution, half_integral_solution, HalfValue, Matching};
use branchvc::Graph;

fn matched(g: &Graph) -> Matching {
    let mut m = Matching::new();
    m.max_matching(g);
    m
}

/// The half-integral solution is feasible and optimal, and ⌈LP⌉ ≤ OPT.
pub fn check_objective(g: &Graph) -> Result<(), String> {
    let sol = half_integral_solution(g, &matched(g));
    let (_, best, _) = lp_optima(g);
    if !sol.is_feasible(g) {
        return Err(format!("infeasible on {:?}", g.edges()));
    }
    if sol.objective_twice() != best {
        return Err(format!(
            "objective {} vs {best} on {:?}",
            sol.objective_twice(),
            g.edges()
        ));
    }
    if best.div_ceil(2) > oracle_vc(g) {
        return Err("LP above OPT".into());
    }
    Ok(())
}

/// The extreme solution is an optimum with a minimum half set, and the half
/// part alone has all-half as its unique optimum.
pub fn check_extreme(g: &Graph) -> Result<(), String> {
    let sol = extreme_solution(g, &matched(g));
    let (alive, best, optima) = lp_optima(g);
    let ours: Vec<u8> = alive
        .iter()
        .map(|&v| sol.value(v).unwrap().twice() as u8)
        .collect();
    if sol.objective_twice() != best || !sol.is_feasible(g) || !optima.contains(&ours) {
        return Err(format!("not an optimum on {:?}", g.edges()));
    }
    let halves = ours.iter().filter(|&&x| x == 1).count();
    let min_halves = optima
        .iter()
        .map(|o| o.iter().filter(|&&x| x == 1).count())
        .min()
        .unwrap();
    if halves != min_halves {
        return Err(format!(
            "half set {halves} not minimal ({min_halves}) on {:?}",
            g.edges()
        ));
    }
    let sub = g.induced(&sol.halves());
    let (_, _, sub_optima) = lp_optima(&sub);
    if sub_optima.len() != 1 || sub_optima[0].iter().any(|&x| x != 1) {
        return Err(format!("half part has another optimum on {:?}", g.edges()));
    }
    Ok(())
}

/// Some minimum cover agrees with every integral coordinate (n ≤ 16).
pub fn check_persistency(g: &Graph) -> Result<(), String> {
    let sol = extreme_solution(g, &matched(g));
    let ok = all_min_covers(g).iter().any(|&c| {
        g.alive_vertices().all(|v| match sol.value(v).unwrap() {
            HalfValue::One => c >> v & 1 == 1,
            HalfValue::Zero => c >> v & 1 == 0,
            HalfValue::Half => true,
        })
    });
    if ok {
        Ok(())
    } else {
        Err(format!(
            "no minimum cover agrees with {:?} on {:?}",
            sol.values,
            g.edges()
        ))
    }
}
