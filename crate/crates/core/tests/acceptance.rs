use std::process::ExitCode;
use std::time::Instant;

use autostack::diagrams::box_diagram;
use autostack::normal_form::NormalForm;
use autostack::ordering::{c_seq, Edge};
use autostack::verify::{self, SuiteReport, BOX_EXAMPLE_GAMMA};
use autostack::words::{parse, Generator};
use num_bigint::BigInt;

const SEED: u64 = 20_240_601;

fn report(id: u32, title: &str, extra: Result<(), String>, r: SuiteReport, started: Instant) -> bool {
    let ok = r.passed() && extra.is_ok();
    let status = if ok { "PASS" } else { "FAIL" };
    println!(
        "{status} {id} {title}: {} checks, {} failed ({:.1}s)",
        r.checked,
        r.failed,
        started.elapsed().as_secs_f64()
    );
    for n in &r.notes {
        println!("     {n}");
    }
    for f in r.failures.iter().chain(extra.err().iter()) {
        println!("     fail: {f}");
    }
    ok
}

fn small_c_values() -> Result<(), String> {
    for (i, want) in [(1, 1), (2, 1), (3, 5), (4, 9)] {
        let got = c_seq(&BigInt::from(i)).map_err(|e| e.to_string())?;
        if got != BigInt::from(want) {
            return Err(format!("C({i}) = {got}, expected {want}"));
        }
    }
    Ok(())
}

/// Box sizes recomputed straight from the letters: walk right to left,
/// accumulate x-exponents, and record the running sum at each y^±1 until it
/// drops to zero or below.
fn example_boxes() -> Result<(), String> {
    let gamma = parse(BOX_EXAMPLE_GAMMA).unwrap();
    let mut sums = Vec::new();
    let mut s = 0i64;
    for g in gamma.iter().rev() {
        match g {
            Generator::X => s += 1,
            Generator::XInv => s -= 1,
            _ => sums.push(s),
        }
    }
    let m = sums.iter().position(|&v| v <= 0).unwrap_or(sums.len());
    let expected: Vec<BigInt> = sums[..m].iter().map(|&v| BigInt::from(v)).collect();
    let e = Edge::new(NormalForm::from_word(&gamma).map_err(|e| e.to_string())?, Generator::Y);
    let d = box_diagram(&e).map_err(|e| e.to_string())?;
    if d.boxes.len() != m || d.sizes() != expected {
        return Err(format!("boxes {:?}, recomputed {:?}", d.sizes(), expected));
    }
    println!("     {BOX_EXAMPLE_GAMMA}: m = {m}, sizes {expected:?}");
    Ok(())
}

fn main() -> ExitCode {
    let mut all = true;
    let t = Instant::now();
    all &= report(1, "oracle consistency, |w| <= 10", Ok(()), verify::oracle_consistency(10), t);
    let t = Instant::now();
    all &= report(2, "three-way normalization, |w| <= 10", Ok(()), verify::normalization_agreement(10), t);
    let t = Instant::now();
    all &= report(3, "bounded rewriting and flow labels, |w| <= 10", Ok(()), verify::boundedness(10), t);
    let t = Instant::now();
    all &=
        report(4, "size sequence and weight of inverse edges, |source| <= 10", Ok(()), verify::inverse_weight(10), t);
    let t = Instant::now();
    all &= report(5, "flow edges lie in the tree or are lighter, |source| <= 10", Ok(()), verify::claim_star(10), t);
    let t = Instant::now();
    all &= report(6, "flow termination, |start| <= 6, |path| <= 8", Ok(()), verify::flow_termination(6, 8, SEED), t);
    let t = Instant::now();
    all &= report(
        7,
        "automata, |w| <= 12, |gamma| <= 8, 1000 negatives",
        Ok(()),
        verify::regularity(12, 8, 1000, SEED),
        t,
    );
    let t = Instant::now();
    all &= report(8, "cell count equals weight, |source| <= 8", small_c_values(), verify::diagram_weight(8), t);
    let t = Instant::now();
    all &= report(9, "worked box diagram", example_boxes(), verify::box_example(), t);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
