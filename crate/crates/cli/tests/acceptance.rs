//! Acceptance suite. Every criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails. All comparisons are exact.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use whg_core::fock::{self, FockBasis};
use whg_core::{bargmann, coherent, grassmann, qukit, CheckReport, Radical};

type Outcome = Result<(), String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn fact(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn require(report: &CheckReport) -> Outcome {
    if report.passed {
        Ok(())
    } else {
        let first = report.failures().next().map(|d| d.relation.clone()).unwrap_or_default();
        Err(format!(
            "{} (r={}, k={}) failed at '{}'",
            report.check, report.rank, report.level, first
        ))
    }
}

fn core<T>(r: whg_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Every tuple in `[0, k]^r` with sum at most `k`, by odometer.
fn brute_force_tuples(r: usize, k: u32) -> BTreeSet<Vec<u32>> {
    let mut out = BTreeSet::new();
    let mut t = vec![0u32; r];
    loop {
        if t.iter().sum::<u32>() <= k {
            out.insert(t.clone());
        }
        let mut i = 0;
        loop {
            if i == r {
                return out;
            }
            t[i] += 1;
            if t[i] <= k {
                break;
            }
            t[i] = 0;
            i += 1;
        }
    }
}

fn c1_dimension() -> Outcome {
    for r in 1..=4usize {
        for k in 1..=6u32 {
            let basis = core(FockBasis::new(r, k))?;
            let formula = fact((k as u64) + r as u64) / (fact(k as u64) * fact(r as u64));
            let brute = brute_force_tuples(r, k);
            if BigInt::from(basis.len()) != formula || brute.len() != basis.len() {
                return Err(format!("r={r} k={k}: basis {} formula {formula} brute {}", basis.len(), brute.len()));
            }
            let listed: BTreeSet<Vec<u32>> = basis.states().iter().cloned().collect();
            if listed != brute {
                return Err(format!("r={r} k={k}: enumerated set differs"));
            }
        }
    }
    if core(FockBasis::new(2, 2))?.len() != 6 {
        return Err("dimension at r=2, k=2 is not 6".into());
    }
    Ok(())
}

fn c2_wh_relations() -> Outcome {
    for r in 1..=3usize {
        for k in 1..=5u32 {
            require(&core(fock::verify_wh_relations(r, k))?)?;
            // independent diagonal oracle: [a_i-, a_i+] |n> = (k - Σn - n_i) |n>
            let basis = core(FockBasis::new(r, k))?;
            for i in 0..r {
                let lo = core(fock::annihilation(&basis, i))?;
                let hi = core(fock::creation(&basis, i))?;
                let c = core(lo.commutator(&hi))?;
                for (idx, n) in basis.states().iter().enumerate() {
                    let s: i64 = n.iter().map(|&x| x as i64).sum();
                    let expected = Radical::from_integer(k as i64 - s - n[i] as i64);
                    if c.get(idx, idx) != expected {
                        return Err(format!("r={r} k={k} mode {} at {}", i + 1, basis.label(idx)));
                    }
                }
                if c.nnz() > basis.len() {
                    return Err(format!("r={r} k={k}: off-diagonal commutator entries"));
                }
            }
        }
    }
    Ok(())
}

fn c3_su_realization() -> Outcome {
    for r in 2..=3usize {
        for k in 1..=4u32 {
            let (gens, report) = core(fock::su_generators(r, k))?;
            require(&report)?;
            if gens.count() != r * (r + 2) {
                return Err(format!("r={r}: {} generators", gens.count()));
            }
            require(&core(fock::serre_check(r, k))?)?;
        }
    }
    if fock::cartan_matrix(3) != vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]] {
        return Err("Cartan matrix for r=3".into());
    }
    Ok(())
}

fn c4_qukit() -> Outcome {
    for k in 1..=10usize {
        let ops = core(qukit::collective_ops(k))?;
        for (name, op) in [("a+", &ops.raising), ("a-", &ops.lowering)] {
            if !op.pow(k as u32 + 1).is_zero() {
                return Err(format!("({name})^{} != 0 at k={k}", k + 1));
            }
        }
    }
    for k in 1..=8usize {
        let ops = core(qukit::collective_ops(k))?;
        // (a+)^n |0> has amplitude n! on every weight-n bitstring, since
        // sqrt(n! k!/(k-n)!) / sqrt(C(k,n)) = n!
        let mut v = qukit::MultiQubitVector::basis_state(k, 0);
        for n in 0..=k {
            let expected = Radical::from_rational(BigRational::from_integer(fact(n as u64)));
            for bits in 0..(1u32 << k) {
                let want = if bits.count_ones() as usize == n { expected.clone() } else { Radical::zero() };
                if v.amplitude(bits) != want {
                    return Err(format!("k={k} n={n} amplitude at {bits:b}"));
                }
            }
            v = v.apply(&ops.raising);
        }
        let report = core(qukit::verify_qukit(k))?;
        require(&report)?;
        let restricted = report
            .details
            .iter()
            .filter(|d| d.relation.contains("on Dicke span = Fock r=1 matrix"))
            .count();
        if restricted != 3 {
            return Err(format!("k={k}: {restricted} restriction records"));
        }
    }
    Ok(())
}

fn c5_grassmann() -> Outcome {
    for k in 1..=8usize {
        require(&core(grassmann::verify_grassmann(k))?)?;
        let table = core(grassmann::sigma_moment_table(k))?;
        for (n, row) in table.iter().enumerate() {
            for (m, got) in row.iter().enumerate() {
                let want = if n == m {
                    BigRational::from_integer(fact(k as u64) / fact((k - n) as u64))
                } else {
                    BigRational::zero()
                };
                if *got != want {
                    return Err(format!("sigma moment k={k} n={n} m={m}: {got}"));
                }
            }
        }
    }
    Ok(())
}

fn c6_bargmann() -> Outcome {
    for r in 1..=3usize {
        for k in 1..=4u32 {
            let report = core(bargmann::verify_bargmann(r, k))?;
            require(&report)?;
            if r == 1 && !report.details.iter().any(|d| d.relation.starts_with("theta realization: ")) {
                return Err(format!("k={k}: theta realization not exercised"));
            }
        }
    }
    Ok(())
}

fn c7_eigen() -> Outcome {
    for r in 1..=3usize {
        for k in 1..=4u32 {
            let report = core(coherent::eigen_check(r, k))?;
            require(&report)?;
            let modes = report.details.iter().filter(|d| d.relation.contains("|eta,z> = eta z")).count();
            if modes != r {
                return Err(format!("r={r} k={k}: {modes} mode records"));
            }
        }
    }
    Ok(())
}

const RESOLUTION_GRID: [(usize, u32); 13] = [
    (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6),
    (2, 1), (2, 2), (2, 3), (2, 4),
    (3, 1), (3, 2), (3, 3),
];

fn c8_resolution() -> Outcome {
    for (r, k) in RESOLUTION_GRID {
        let report = core(coherent::resolution_check(r, k))?;
        require(&report)?;
        if !report.notes.iter().any(|n| n == "identity: exact") {
            return Err(format!("r={r} k={k}: identity not exact"));
        }
    }
    Ok(())
}

fn c9_recurrence() -> Outcome {
    for (r, k) in RESOLUTION_GRID {
        require(&core(coherent::recurrence_check(r, k))?)?;
        let iterated = core(coherent::bg_coefficients_by_recurrence(r, k))?;
        for (n, c) in &iterated {
            let s: u64 = n.iter().map(|&x| x as u64).sum();
            let den = n.iter().fold(fact(k as u64), |acc, &x| acc * fact(x as u64));
            let want = BigRational::new(fact(k as u64 - s), den);
            if c * c != Radical::from_rational(want) || c.signum() != 1 {
                return Err(format!("r={r} k={k} n={n:?}: {c}"));
            }
        }
    }
    Ok(())
}

fn c10_large_k() -> Outcome {
    for k in [50u32, 100] {
        let dev = core(fock::large_k_deviation(1, k, 3))?;
        if dev.same_mode != BigRational::new(BigInt::from(6), BigInt::from(k)) {
            return Err(format!("k={k}: same-mode deviation {}", dev.same_mode));
        }
        let cross = core(fock::large_k_deviation(2, k, 3))?;
        if !cross.cross_pattern_exact || !cross.within_bound(3, k) {
            return Err(format!("k={k}: cross-mode pattern"));
        }
    }
    Ok(())
}

fn c11_cli_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_whg"))
            .args(["verify-all", "--max-rank", "3", "--max-level", "3", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let first = run()?;
    let second = run()?;
    if !first.status.success() || !second.status.success() {
        return Err(format!("exit codes {:?} {:?}", first.status.code(), second.status.code()));
    }
    if first.stdout != second.stdout || first.stdout.is_empty() {
        return Err("outputs differ between runs".into());
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("dimension formula against brute-force enumeration", c1_dimension, 1),
        ("ladder relations, r <= 3, k <= 5", c2_wh_relations, 30),
        ("su(r+1) mixed actions and Chevalley-Serre relations", c3_su_realization, 60),
        ("qukit nilpotency, prefactors and Dicke restriction", c4_qukit, 60),
        ("Grassmann calculus, Berezin and sigma moments", c5_grassmann, 30),
        ("Bargmann intertwining and theta realization", c6_bargmann, 30),
        ("coherent-state eigenvalue equations", c7_eigen, 30),
        ("resolution of identity", c8_resolution, 60),
        ("recurrence against closed-form coefficients", c9_recurrence, 10),
        ("large-k contraction", c10_large_k, 5),
        ("verify-all determinism", c11_cli_determinism, 120),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed < Duration::from_secs(*limit) {
                Ok(())
            } else {
                Err(format!("over the {limit} s budget"))
            }
        });
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name}  ({:.2} s)", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}  ({:.2} s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
