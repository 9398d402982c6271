//! Box diagram of an edge, its filling by the two defining relators, and a
//! DOT rendering of the 1-skeleton.
//!
//! ```text
//! cargo run --example box_diagrams -- "yx^-1yx^-2yx^4" > d.dot && dot -Tsvg d.dot > d.svg
//! ```

use autostack::diagrams::{box_diagram, fill, unfilled, FilledBox};
use autostack::normal_form::sigma_normalize;
use autostack::ordering::{weight, Edge};
use autostack::words::{parse, Generator};

fn main() {
    let src = std::env::args().nth(1).unwrap_or_else(|| "yx^4".into());
    let v = sigma_normalize(&parse(&src).expect("word")).unwrap().0;
    let e = Edge::new(v, Generator::Y);
    let d = box_diagram(&e).expect("non-tree edge");
    eprintln!("edge {}  target {}", d.edge, d.target);
    for (k, (size, sign)) in d.boxes.iter().enumerate() {
        let filled = FilledBox::new(size.try_into().unwrap());
        eprintln!("  box {k}: size {size}, crossing y^{sign}, {} cells once filled", filled.cell_count());
    }

    let bare = unfilled(&d).unwrap();
    let full = fill(&d).unwrap();
    let report = full.check(&[1, 2]);
    eprintln!(
        "unfilled: {} cells; filled: {} cells; weight {}",
        bare.cells.len(),
        full.cells.len(),
        weight(&e).unwrap()
    );
    eprintln!(
        "V={} E={} F={} chi={} problems={:?}",
        report.vertices, report.edges, report.cells, report.euler_characteristic, report.problems
    );
    print!("{}", full.to_dot());
}
