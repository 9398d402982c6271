//! The flow function on a single edge, the check that every edge it uses is
//! lighter or in the tree, and iteration of a path until it lies in the tree.

use autostack::flow::{flow_to_tree, phi, verify_claim_star, DirectedPath, DEFAULT_MAX_ITER};
use autostack::normal_form::sigma_normalize;
use autostack::ordering::Edge;
use autostack::words::{parse, Generator};

fn main() {
    let v = sigma_normalize(&parse("yx^3").unwrap()).unwrap().0;
    let e = Edge::new(v.clone(), Generator::Y);
    let p = phi(&e);
    println!("phi{e} = {}", p.label);

    let report = verify_claim_star(&e);
    for c in &report.checks {
        let w = c.weight.as_ref().map(|w| format!("weight {w}")).unwrap_or_else(|| "tree".into());
        println!("  {:>2} {} {w}", c.index, c.edge);
    }
    println!("edge weight {}, check {}", report.weight, if report.passed() { "passed" } else { "failed" });

    let path = DirectedPath::new(v, parse("yyX").unwrap());
    let trace = flow_to_tree(&path, DEFAULT_MAX_ITER);
    for (k, q) in trace.iterations.iter().enumerate() {
        println!("{k}: {} edges", q.len());
    }
    println!("in the tree after {} applications", trace.n_p());
}
