//! Size sequences and weights of the edges leaving a vertex.

use autostack::normal_form::sigma_normalize;
use autostack::ordering::{c_seq, precedes, size_sequence, weight, Edge};
use autostack::words::{parse, Generator};
use num_bigint::BigInt;

fn main() {
    let v = sigma_normalize(&parse("x^2y^-1xy^-1x^-2yx^4").unwrap()).unwrap().0;
    let mut edges = Vec::new();
    for g in Generator::ALL {
        let e = Edge::new(v.clone(), g);
        match size_sequence(&e) {
            Ok(s) => {
                println!("{e}: sigma {s}, weight {}", weight(&e).unwrap());
                edges.push(e);
            }
            Err(_) => println!("{e}: tree edge"),
        }
    }
    if let [a, b] = &edges[..] {
        println!("{a} lighter than {b}: {}", precedes(a, b).unwrap());
    }

    let c: Vec<String> = (1..=10).map(|i| c_seq(&BigInt::from(i)).unwrap().to_string()).collect();
    println!("C(1..10) = {}", c.join(", "));
}
