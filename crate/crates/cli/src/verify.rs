//! The `verify` subcommand: recomputes every closed-form count for one
//! (q, n) cell by exhaustive enumeration and prints a pass/fail line per
//! check. Any mismatch makes the process exit nonzero.

use std::collections::HashMap;

use num_bigint::BigInt;

use hullcensus::bilinear::{BilinearSpace, TypeTag};
use hullcensus::census;
use hullcensus::gf::Field;
use hullcensus::linalg::{self, Matrix, Subspace};
use hullcensus::oracle::{self, OracleBudget};
use hullcensus::weights;

use crate::{usage, CliError, VerifyArgs};

struct Reporter {
    failures: u64,
    checks: u64,
}

impl Reporter {
    fn new() -> Reporter {
        Reporter {
            failures: 0,
            checks: 0,
        }
    }

    fn record<T: PartialEq + std::fmt::Display>(&mut self, label: &str, formula: T, oracle: T) {
        self.checks += 1;
        if formula == oracle {
            println!("ok   {label}: {formula}");
        } else {
            self.failures += 1;
            println!("FAIL {label}: formula={formula} oracle={oracle}");
        }
    }
}

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    let field = Field::new(args.q).map_err(usage)?;
    if args.n == 0 {
        return Err(CliError::Usage("n must be positive".into()));
    }
    let budget = OracleBudget {
        max_subspaces: args.max_subspaces,
        max_codewords: args.max_codewords,
    };
    let q = args.q;
    let n = args.n;

    let mut spaces: Vec<(String, BilinearSpace)> = Vec::new();
    match &args.gram {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(usage)?;
            let space = BilinearSpace::from_json(&text).map_err(usage)?;
            if space.field().order() != q || space.dim() != n {
                return Err(CliError::Usage(format!(
                    "Gram document describes F_{}^{}, but --q {q} --n {n} was requested",
                    space.field().order(),
                    space.dim()
                )));
            }
            spaces.push(("gram".into(), space));
        }
        None => {
            spaces.push(("dot".into(), BilinearSpace::standard_dot(field.clone(), n)));
            if q % 2 == 0 && n % 2 == 0 {
                spaces.push((
                    "alternating".into(),
                    BilinearSpace::alternating_block(field.clone(), n).unwrap(),
                ));
            }
        }
    }

    let mut rep = Reporter::new();
    for (name, space) in &spaces {
        verify_space(&mut rep, name, space, &budget)?;
        if args.gram.is_none() && name == "dot" {
            verify_dot_extras(&mut rep, space, &budget)?;
        }
    }

    println!(
        "{} checks, {} failures (q={q}, n={n})",
        rep.checks, rep.failures
    );
    if rep.failures > 0 {
        return Err(CliError::Mismatch(format!(
            "{} of {} checks disagreed with the enumeration oracle",
            rep.failures, rep.checks
        )));
    }
    Ok(())
}

/// Checks that apply to an arbitrary bilinear space.
fn verify_space(
    rep: &mut Reporter,
    name: &str,
    space: &BilinearSpace,
    budget: &OracleBudget,
) -> Result<(), CliError> {
    let q = space.field().order();
    let n = space.dim();
    let tag = space.type_tag();

    rep.record(
        &format!("witt-index {name} type={tag}"),
        space.witt_index().to_string(),
        oracle::witt_index(space, budget)?.to_string(),
    );

    for k in 0..=n {
        let scanned = oracle::hull_counts(space, k, budget)?;
        for (l, got) in scanned.iter().enumerate() {
            rep.record(
                &format!("hull-census {name} type={tag} k={k} l={l}"),
                census::hull_count(tag, n, k, l, q),
                got.clone(),
            );
        }
        let total: BigInt = scanned
            .iter()
            .enumerate()
            .map(|(l, c)| BigInt::from(l) * c)
            .sum();
        rep.record(
            &format!("total-hull-dim {name} type={tag} k={k}"),
            census::total_hull_dim(tag, n, k, q),
            total,
        );
    }

    if tag != TypeTag::N0na {
        for k in 0..=space.witt_index() {
            rep.record(
                &format!("so-recursion {name} type={tag} k={k}"),
                census::self_orthogonal_count_recursive(tag, n, k, q).map_err(usage)?,
                census::self_orthogonal_count(tag, n, k, q),
            );
        }
    }
    Ok(())
}

/// Checks specific to the standard dot product.
fn verify_dot_extras(
    rep: &mut Reporter,
    space: &BilinearSpace,
    budget: &OracleBudget,
) -> Result<(), CliError> {
    let field = space.field().clone();
    let q = field.order();
    let n = space.dim();
    let tag = space.type_tag();
    let w = space.witt_index();

    // Self-orthogonal vector counts per weight.
    let scanned = oracle::so_vector_counts(&field, n, budget)?;
    for (i, got) in scanned.iter().enumerate() {
        rep.record(
            &format!("so-vectors i={i}"),
            weights::so_vector_count(q, n, i),
            got.clone(),
        );
    }

    // Aggregate weight tables per stratum.
    for k in 1..=n {
        let scanned = oracle::aggregate_weights_all(space, k, budget)?;
        for (l, got) in scanned.iter().enumerate() {
            let formula = weights::aggregate_hull_weights(q, n, k, l)
                .map_err(usage)?
                .aggregate;
            rep.record(
                &format!("aggregate-weights k={k} l={l}"),
                join(&formula),
                join(got),
            );
        }
    }

    // Self-orthogonal subspace lists per dimension, shared by the
    // containment and coordinate checks.
    let mut so_lists: Vec<Vec<Subspace>> = Vec::with_capacity(w + 1);
    so_lists.push(vec![Subspace::zero(field.clone(), n)]);
    for k in 1..=w {
        so_lists.push(oracle::self_orthogonal_subspaces(space, k, budget)?);
    }

    // Containment counts: pairs (U, C) with U <= C, grouped by U.
    let ones = vec![hullcensus::FieldElement::ONE; n];
    for k in 1..=w {
        for t in 0..=k {
            let mut by_u: HashMap<Subspace, u64> = HashMap::new();
            for c in &so_lists[k] {
                linalg::for_each_subspace(&field, k, t, budget.max_subspaces, |coeffs| {
                    let u = Subspace::from_generators(coeffs.mul(c.basis()));
                    *by_u.entry(u).or_insert(0) += 1;
                })
                .map_err(CliError::from)?;
            }
            let mut mismatches = 0u64;
            for u in &so_lists[t] {
                let contains_one = u.contains_vector(&ones);
                let expected =
                    census::so_containing_count(tag, n, k, t, contains_one, q).map_err(usage)?;
                let got = BigInt::from(by_u.get(u).copied().unwrap_or(0));
                if expected != got {
                    mismatches += 1;
                }
            }
            rep.record(
                &format!(
                    "so-containing k={k} t={t} over {} subspaces",
                    so_lists[t].len()
                ),
                0u64,
                mismatches,
            );
        }
    }

    // Coordinate-subspace intersection counts for every support size and
    // every support set of that size.
    for k in 1..=w {
        for t in 1..n {
            let formula = census::coordinate_meeting_count(n, k, t, q).map_err(usage)?;
            let mut worst: Option<BigInt> = None;
            let mut all_equal = true;
            for support in subsets(n, t) {
                let outside: Vec<usize> = (0..n).filter(|c| !support.contains(c)).collect();
                let mut count = 0u64;
                for c in &so_lists[k] {
                    let restricted = Matrix::from_rows(
                        field.clone(),
                        (0..k)
                            .map(|r| outside.iter().map(|&cc| c.basis().at(r, cc)).collect())
                            .collect(),
                    );
                    let rank = if outside.is_empty() {
                        0
                    } else {
                        restricted.rank()
                    };
                    if rank < k {
                        count += 1;
                    }
                }
                let count = BigInt::from(count);
                if count != formula {
                    all_equal = false;
                    worst = Some(count);
                }
            }
            rep.record(
                &format!("coordinate-meeting k={k} t={t} all-subsets"),
                formula.clone(),
                if all_equal { formula } else { worst.unwrap() },
            );
        }
    }
    Ok(())
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn subsets(n: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if t > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..t).collect();
    loop {
        out.push(cur.clone());
        let mut i = t;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if cur[i] < n - t + i {
                cur[i] += 1;
                for j in (i + 1)..t {
                    cur[j] = cur[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}
