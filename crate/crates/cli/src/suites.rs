use std::collections::BTreeMap;

use qtangent::closedform::{
    closed_form_series, dual_series, pair_residual, search_pairs, tan_from_vector, ExponentVector,
    PAIR_TABLE,
};
use qtangent::contfrac::{
    bk_equivalence_check, closed_continuants, continuants, convergent, dual_schedule_residuals,
    extract_cf, CfSchedule, ClosedContinuants, ScheduleName,
};
use qtangent::divisibility::{
    big_t_all, divide_by_products, duality_residual_from, gauss_ratio, mixed_product,
    tanrec_residual_from, MixedKind, TangentPolynomial, DIVISIBLE_VECTORS,
};
use qtangent::oracle::{
    classical_probability, count_alternating_permutations, oracle_compare, reversal_check,
};
use qtangent::qalg::{QRat, ZSeries};
use qtangent::updown::{cross_identity_check, recursion_series, tau, Comparator, Kind, Variant};
use rayon::prelude::*;

use crate::config::{Suite, SuiteConfig};
use crate::report::CheckResult;

type Task<'a> = Box<dyn Fn() -> Vec<CheckResult> + Send + Sync + 'a>;

fn run_tasks(tasks: Vec<Task<'_>>) -> Vec<CheckResult> {
    tasks
        .par_iter()
        .map(|t| t())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Runs the configured suite on a pool of `config.jobs` threads. Row order
/// depends only on the configuration.
pub fn run_suite(config: &SuiteConfig) -> Vec<CheckResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .expect("thread pool");
    pool.install(|| match config.suite {
        Suite::All => Suite::EACH
            .iter()
            .flat_map(|&s| run_one(s, config))
            .collect(),
        s => run_one(s, config),
    })
}

fn run_one(suite: Suite, c: &SuiteConfig) -> Vec<CheckResult> {
    match suite {
        Suite::Pairs => pairs(c),
        Suite::Quotients => run_tasks(quotients(c)),
        Suite::Oracle => run_tasks(oracle(c)),
        Suite::Limits => run_tasks(limits(c)),
        Suite::Contfrac => run_tasks(contfrac(c)),
        Suite::Conjectures => run_tasks(conjectures(c)),
        Suite::Divisibility => run_tasks(divisibility(c)),
        Suite::All => unreachable!(),
    }
}

fn in_box(c: &SuiteConfig, v: ExponentVector) -> bool {
    let b = c.search_box.0;
    let r = |(lo, hi): (i64, i64), x: i64| lo <= x && x <= hi;
    r(b.a, v.a) && r(b.b, v.b) && r(b.c, v.c) && r(b.d, v.d)
}

/// One row for a single candidate vector: pass iff the pair relation holds through `order`.
pub fn pair_check(v: ExponentVector, order: usize) -> CheckResult {
    CheckResult::new("pairs", "pair")
        .param("vector", v)
        .param("order", order)
        .series(&pair_residual(v, order))
}

fn pairs(c: &SuiteConfig) -> Vec<CheckResult> {
    let bx = c.search_box.0;
    let found = search_pairs(&bx, c.order);
    let mut table: Vec<_> = PAIR_TABLE
        .iter()
        .copied()
        .filter(|&v| in_box(c, v))
        .collect();
    table.sort();
    let mut rows: Vec<CheckResult> = found
        .iter()
        .map(|&v| pair_check(v, c.order).param("in_table", PAIR_TABLE.contains(&v)))
        .collect();
    rows.extend(
        table
            .iter()
            .filter(|v| !found.contains(v))
            .map(|&v| pair_check(v, c.order).param("in_table", true)),
    );
    let mut summary = CheckResult::new("pairs", "pair_search")
        .param("candidates", bx.len())
        .param("found", found.len())
        .param("rejected", bx.len() - found.len())
        .param("order", c.order);
    if found != table {
        let extra: Vec<String> = found
            .iter()
            .filter(|v| !table.contains(v))
            .map(|v| v.to_string())
            .collect();
        let missing: Vec<String> = table
            .iter()
            .filter(|v| !found.contains(v))
            .map(|v| v.to_string())
            .collect();
        summary = summary.fail(None, format!("extra {extra:?}, missing {missing:?}"));
    }
    rows.push(summary);
    rows
}

/// Smallest index `>= order` of the given parity.
fn order_with_parity(order: usize, odd: bool) -> usize {
    if (order % 2 == 1) == odd {
        order
    } else {
        order + 1
    }
}

fn quotients(c: &SuiteConfig) -> Vec<Task<'_>> {
    let mut tasks: Vec<Task> = Vec::new();
    for v in Variant::all() {
        tasks.push(Box::new(move || {
            let order = order_with_parity(c.order, v.kind() == Kind::Tangent);
            let row = CheckResult::new("quotients", "recursion_vs_closed_form")
                .param("variant", v)
                .param("order", order);
            let rec = recursion_series(v, order);
            vec![row.check(closed_form_series(v, order), |row, cf| {
                row.series(&(&rec - &cf))
            })]
        }));
    }
    for n in 1..=(c.order / 2).max(1) {
        tasks.push(Box::new(move || {
            let row = CheckResult::new("quotients", "cross_identity").param("n", n);
            vec![row.check(cross_identity_check(n), |row, r| row.qrat(&r))]
        }));
    }
    tasks
}

/// The eight alternating comparator patterns, one ascending-type and one descending-type step.
fn patterns() -> Vec<(Comparator, Comparator)> {
    use Comparator::*;
    let mut out = Vec::new();
    for a in [Le, Lt] {
        for b in [Ge, Gt] {
            out.push((a, b));
            out.push((b, a));
        }
    }
    out
}

fn oracle(c: &SuiteConfig) -> Vec<Task<'_>> {
    let mut tasks: Vec<Task> = Vec::new();
    for v in Variant::all() {
        for n in (1..=c.max_n).filter(|&n| v.admits_length(n)) {
            tasks.push(Box::new(move || {
                let row = CheckResult::new("oracle", "enumeration_vs_recursion")
                    .param("variant", v)
                    .param("n", n)
                    .param("cutoff", c.cutoff);
                vec![row.check(oracle_compare(v, n, c.cutoff), |row, r| row.poly(&r))]
            }));
        }
    }
    for (a, b) in patterns() {
        for n in 2..=c.max_n {
            tasks.push(Box::new(move || {
                let chain: Vec<Comparator> =
                    (1..n).map(|i| if i % 2 == 1 { a } else { b }).collect();
                let name: String = chain.iter().map(|x| x.symbol()).collect();
                let row = CheckResult::new("oracle", "reversal")
                    .param("chain", name)
                    .param("n", n)
                    .param("cutoff", c.cutoff);
                vec![row.poly(&reversal_check(&chain, c.cutoff))]
            }));
        }
    }
    tasks
}

fn limits(c: &SuiteConfig) -> Vec<Task<'_>> {
    let mut tasks: Vec<Task> = Vec::new();
    for v in Variant::all() {
        for n in (1..=c.max_n).filter(|&n| v.admits_length(n)) {
            tasks.push(Box::new(move || {
                let count = count_alternating_permutations(n);
                let row = CheckResult::new("limits", "classical_limit")
                    .param("variant", v)
                    .param("n", n)
                    .param("alternating_permutations", count);
                let value = tau(v, n)
                    .map_err(|e| e.to_string())
                    .and_then(|t| t.value.eval_at_q1().map_err(|e| e.to_string()));
                vec![row.check(value, |row, l| {
                    row.qrat(&(&QRat::from_rational(&l) - &classical_probability(n)))
                })]
            }));
        }
    }
    tasks
}

fn exponent_list(e: &[i64]) -> String {
    e.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn contfrac(c: &SuiteConfig) -> Vec<Task<'_>> {
    let mut tasks: Vec<Task> = Vec::new();
    let order = 2 * c.depth + 3;
    for name in ScheduleName::PROVEN {
        tasks.push(Box::new(move || {
            let s = CfSchedule::named(name);
            let t = match tan_from_vector(name.vector(), order) {
                Ok(t) => t,
                Err(e) => {
                    return vec![CheckResult::new("contfrac", "convergent")
                        .param("schedule", name)
                        .error(e)]
                }
            };
            (1..=c.depth)
                .map(|n| {
                    let row = CheckResult::new("contfrac", "convergent")
                        .param("schedule", name)
                        .param("depth", n);
                    row.check(convergent(&s, n, order), |row, conv| {
                        let diff = &conv - &t;
                        match diff.first_nonzero() {
                            Some(k) if k < 2 * n + 1 => row.fail(Some(k as i64), diff.coeff(k)),
                            Some(k) => row.param("first_difference", k),
                            None => row.param("first_difference", format!(">{order}")),
                        }
                    })
                })
                .collect()
        }));
    }
    for (closed, name) in [
        (ClosedContinuants::Thm1, ScheduleName::Thm1),
        (ClosedContinuants::Thm0101, ScheduleName::Thm0101),
    ] {
        tasks.push(Box::new(move || {
            (1..=c.max_n)
                .map(|n| {
                    let a = closed_continuants(closed, n);
                    let b = continuants(&CfSchedule::named(name), n);
                    let row = CheckResult::new("contfrac", "closed_continuants")
                        .param("schedule", name)
                        .param("n", n);
                    let p = &a.p - &b.p;
                    if p.is_zero() {
                        row.series(&(&a.q - &b.q))
                    } else {
                        row.series(&p)
                    }
                })
                .collect()
        }));
    }
    for (from, to) in [
        (ScheduleName::Thm1, ScheduleName::Thm2Dual),
        (ScheduleName::Thm0101, ScheduleName::Thm2022),
    ] {
        tasks.push(Box::new(move || {
            let r =
                dual_schedule_residuals(&CfSchedule::named(from), &CfSchedule::named(to), c.depth);
            vec![residual_list(
                CheckResult::new("contfrac", "dual_schedule")
                    .param("from", from)
                    .param("to", to),
                &r,
            )]
        }));
    }
    tasks.push(Box::new(move || {
        bk_equivalence_check(c.depth)
            .into_iter()
            .flat_map(|r| {
                let base = |name: &str| CheckResult::new("contfrac", name).param("k", r.k);
                [
                    base("bk_proposed_forms_agree").qrat(&r.forms_residual),
                    base("bk_from_schedule")
                        .param("proposed_matches_schedule", r.schedule_residual.is_zero())
                        .qrat(&r.corrected_residual),
                ]
            })
            .collect()
    }));
    tasks
}

/// Pass iff every entry is zero; the order is the 1-based index of the first nonzero one.
fn residual_list(row: CheckResult, r: &[QRat]) -> CheckResult {
    match r.iter().position(|x| !x.is_zero()) {
        None => row,
        Some(i) => row.fail(Some(i as i64 + 1), &r[i]),
    }
}

fn conjecture_row(name: ScheduleName, t: &ZSeries, depth: usize) -> CheckResult {
    let row = CheckResult::new("conjectures", name.as_str())
        .param("vector", name.vector())
        .param("depth", depth);
    row.check(extract_cf(t, depth), |row, cf| {
        let want = CfSchedule::named(name).coeffs(depth);
        let residuals: Vec<QRat> = cf.coeffs.iter().zip(&want).map(|(a, b)| a - b).collect();
        let row = match cf.ansatz_exponents() {
            Some(e) => row.param("exponents", exponent_list(&e)),
            None => row,
        };
        if cf.coeffs.len() < depth {
            row.fail(
                Some(cf.coeffs.len() as i64 + 1),
                "fraction terminates early",
            )
        } else {
            residual_list(row, &residuals)
        }
    })
}

fn conjectures(c: &SuiteConfig) -> Vec<Task<'_>> {
    let order = 2 * c.depth + 1;
    vec![
        Box::new(move || {
            let row = CheckResult::new("conjectures", ScheduleName::Conj1010.as_str());
            vec![row.clone().check(
                tan_from_vector(ScheduleName::Conj1010.vector(), order),
                |_, t| conjecture_row(ScheduleName::Conj1010, &t, c.depth),
            )]
        }),
        Box::new(move || {
            // the dual family: direct extraction, plus the q -> 1/q image of the first fraction
            let row = CheckResult::new("conjectures", ScheduleName::Conj1111.as_str());
            let direct = tan_from_vector(ScheduleName::Conj1111.vector(), order);
            let base = tan_from_vector(ScheduleName::Conj1010.vector(), order);
            vec![
                row.check(direct.and_then(|d| base.map(|b| (d, b))), |_, (d, b)| {
                    let row = conjecture_row(ScheduleName::Conj1111, &d, c.depth)
                        .param("dual_of", ScheduleName::Conj1010);
                    if row.status != crate::report::Status::Pass {
                        return row;
                    }
                    let via_dual =
                        conjecture_row(ScheduleName::Conj1111, &dual_series(&b), c.depth);
                    if via_dual.status != crate::report::Status::Pass {
                        return via_dual.param("dual_of", ScheduleName::Conj1010);
                    }
                    let r = dual_schedule_residuals(
                        &CfSchedule::named(ScheduleName::Conj1010),
                        &CfSchedule::named(ScheduleName::Conj1111),
                        c.depth,
                    );
                    residual_list(row, &r)
                }),
            ]
        }),
    ]
}

fn divisibility(c: &SuiteConfig) -> Vec<Task<'_>> {
    let mut tasks: Vec<Task> = Vec::new();
    let max_n = c.max_n;
    tasks.push(Box::new(move || {
        let polys: BTreeMap<ExponentVector, Result<Vec<TangentPolynomial>, String>> =
            DIVISIBLE_VECTORS
                .par_iter()
                .map(|&v| (v, big_t_all(v, max_n).map_err(|e| e.to_string())))
                .collect();
        let mut rows = Vec::new();
        for v in DIVISIBLE_VECTORS {
            match &polys[&v] {
                Err(e) => rows.push(
                    CheckResult::new("divisibility", "divisible")
                        .param("vector", v)
                        .error(e),
                ),
                Ok(ts) => {
                    for t in ts {
                        let row = CheckResult::new("divisibility", "divisible")
                            .param("vector", v)
                            .param("n", t.n);
                        rows.push(row.check(divide_by_products(t), |row, _| row));
                    }
                }
            }
        }
        for v in DIVISIBLE_VECTORS {
            if let (Ok(a), Ok(b)) = (&polys[&v], &polys[&v.dual()]) {
                for (t, d) in a.iter().zip(b) {
                    let row = CheckResult::new("divisibility", "duality")
                        .param("vector", v)
                        .param("dual", v.dual())
                        .param("n", t.n);
                    rows.push(row.qrat(&duality_residual_from(t, d)));
                }
            }
        }
        let base = ExponentVector::new(0, 0, 0, 0);
        let scaled = ExponentVector::new(0, 1, 0, 1);
        if let (Ok(a), Ok(b)) = (&polys[&base], &polys[&scaled]) {
            for (t, s) in a.iter().zip(b) {
                let row = CheckResult::new("divisibility", "half_power_scaling")
                    .param("vector", scaled)
                    .param("n", t.n);
                rows.push(row.poly(&(&s.value - &t.value.shift_up(t.n))));
            }
        }
        if let Ok(ts) = &polys[&ExponentVector::new(1, 0, 1, 0)] {
            for n in 1..=max_n {
                let row = CheckResult::new("divisibility", "tanrec").param("n", n);
                rows.push(row.check(tanrec_residual_from(ts, n), |row, r| row.poly(&r)));
            }
        }
        rows
    }));
    for kind in MixedKind::ALL {
        tasks.push(Box::new(move || {
            (kind.min_n()..=max_n)
                .map(|n| {
                    let m = mixed_product(kind, n);
                    CheckResult::new("divisibility", "mixed_product")
                        .param("kind", kind.name())
                        .param("n", n)
                        .qrat(&m.residual)
                })
                .collect()
        }));
    }
    tasks.push(Box::new(move || {
        (1..=max_n)
            .flat_map(|n| {
                (1..=n).map(move |k| {
                    let row = CheckResult::new("divisibility", "gauss_ratio")
                        .param("n", n)
                        .param("k", k);
                    row.check(gauss_ratio(n, k), |row, _| row)
                })
            })
            .collect()
    }));
    tasks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn cfg(suite: Suite) -> SuiteConfig {
        SuiteConfig {
            suite,
            jobs: 2,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn wrong_vector_carries_witness() {
        let r = pair_check(ExponentVector::new(0, 0, 1, 1), 6);
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.residual_order, Some(2));
        let w: QRat = r.witness.unwrap().parse().unwrap();
        assert!(!w.is_zero());
    }

    #[test]
    fn trivial_oracle() {
        let c = SuiteConfig {
            max_n: 1,
            ..cfg(Suite::Oracle)
        };
        let rows = run_suite(&c);
        assert_eq!(rows.len(), 6);
        assert!(rows
            .iter()
            .all(|r| r.status == Status::Pass && r.params["n"] == "1"));
    }

    #[test]
    fn conjecture_rows() {
        let rows = run_suite(&cfg(Suite::Conjectures));
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].params["exponents"], "0,-2,1,-9,6,-20");
        assert_eq!(rows[1].params["exponents"], "0,0,-5,3,-14,10");
        assert!(rows.iter().all(|r| r.status == Status::Pass));
    }

    #[test]
    fn parity_rounding() {
        assert_eq!(order_with_parity(12, true), 13);
        assert_eq!(order_with_parity(12, false), 12);
        assert_eq!(order_with_parity(13, false), 14);
    }
}
