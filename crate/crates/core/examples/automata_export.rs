//! Builds the normal-form acceptor and the Graph(Φ) acceptor over padded
//! triples, prints their sizes and writes both transition tables.
//!
//! ```text
//! cargo run --release --example automata_export -- /tmp/fsa
//! ```

use std::path::PathBuf;

use autostack::automata::{graph_phi_automaton, nf_automaton, Dfa};
use autostack::cprs::graph_phi;
use autostack::normal_form::sigma_normalize;
use autostack::words::{parse, Generator};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    let n = nf_automaton();
    let g = graph_phi_automaton();
    println!("normal forms: {} states", n.num_states());
    println!("Graph(Φ):     {} states over 125 symbols", g.num_states());

    for w in ["yxy", "xyx^-2yx^2", "yx^-1"] {
        println!("  {w:<12} in N: {}", n.accepts_word(&parse(w).unwrap()));
    }
    let v = sigma_normalize(&parse("yx").unwrap()).unwrap().0;
    let t = graph_phi(&v, Generator::Y);
    println!(
        "  ({}, {}, {}) accepted: {}",
        t.gamma,
        t.a,
        t.out_label,
        g.accepts_triple(&v.to_word(), &parse("y").unwrap(), &t.out_label)
    );

    for (name, dfa) in [("nf.fsa", &n), ("graphphi.fsa", &g)] {
        let path = dir.join(name);
        std::fs::write(&path, dfa.to_table()).expect("write table");
        let back = Dfa::from_table(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(back.equivalent(dfa));
        println!("wrote {}", path.display());
    }
}
