//! Minor enumeration split by lead column across scoped threads.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use coltrs_core::certify::{first_singular_with_lead, oracle_cost, oracle_mds, MdsVerdict};
use coltrs_core::{Error, Matrix, Result};

/// Same verdict and witness as [`oracle_mds`]. Workers claim lead columns in
/// increasing order and stop once a smaller lead has produced a witness.
pub fn oracle_mds_parallel(g: &Matrix, budget: u128, jobs: usize) -> Result<MdsVerdict> {
    if jobs <= 1 || g.rows() == 0 || g.rows() > g.cols() {
        return oracle_mds(g, budget);
    }
    let needed = oracle_cost(g);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let leads = g.cols() - g.rows() + 1;
    let next = AtomicUsize::new(0);
    let best = AtomicUsize::new(usize::MAX);
    let found: Mutex<Vec<(usize, Result<Vec<usize>>)>> = Mutex::new(Vec::new());
    thread::scope(|s| {
        for _ in 0..jobs.min(leads) {
            s.spawn(|| loop {
                let lead = next.fetch_add(1, Ordering::Relaxed);
                if lead >= leads || lead > best.load(Ordering::Relaxed) {
                    break;
                }
                match first_singular_with_lead(g, lead) {
                    Ok(None) => {}
                    Ok(Some(w)) => {
                        best.fetch_min(lead, Ordering::Relaxed);
                        found.lock().expect("poisoned").push((lead, Ok(w)));
                    }
                    Err(e) => {
                        best.fetch_min(lead, Ordering::Relaxed);
                        found.lock().expect("poisoned").push((lead, Err(e)));
                    }
                }
            });
        }
    });
    let mut found = found.into_inner().expect("poisoned");
    found.sort_by_key(|(lead, _)| *lead);
    match found.into_iter().next() {
        None => Ok(MdsVerdict { is_mds: true, witness: Vec::new() }),
        Some((_, Ok(w))) => Ok(MdsVerdict { is_mds: false, witness: w }),
        Some((_, Err(e))) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use coltrs_core::certify::DEFAULT_BUDGET;
    use coltrs_core::reference::reference;

    #[test]
    fn matches_sequential_oracle() {
        let spec = reference(1).unwrap().spec;
        let bad = spec.with_lambdas(vec![spec.lambdas()[0], spec.subgroup().elements()[3]]).unwrap();
        for s in [spec, bad] {
            let g = s.generator();
            let expected = oracle_mds(&g, DEFAULT_BUDGET).unwrap();
            for jobs in [1, 2, 5] {
                assert_eq!(oracle_mds_parallel(&g, DEFAULT_BUDGET, jobs).unwrap(), expected);
            }
        }
    }

    #[test]
    fn budget_enforced() {
        let g = reference(1).unwrap().spec.generator();
        assert!(matches!(oracle_mds_parallel(&g, 10, 4), Err(Error::BudgetExceeded { .. })));
    }
}
