//! Guarded prefix rewriting, one step at a time.

use autostack::cprs::{rules, RewriteSystem, DEFAULT_STEP_BUDGET};
use autostack::words::parse;

fn main() {
    let rs = RewriteSystem::global();
    println!("{} rule schemas:", rules().len());
    for r in rules() {
        println!("  {:<14} {} -> {}   if {}", r.id.to_string(), r.lhs, r.rhs, rs.guard_name(r.id));
    }

    let w = parse("[y,xyx^-2]y^2x^-1").unwrap();
    let (out, steps) = rs.rewrite_trace(&w, DEFAULT_STEP_BUDGET).unwrap();
    println!("\n{w}");
    for s in &steps {
        println!("  {:<14} at {:>2}: {} -> {}   => {}", s.rule.to_string(), s.split, s.lhs, s.rhs, s.result);
    }
    println!("irreducible: {out}");
}
