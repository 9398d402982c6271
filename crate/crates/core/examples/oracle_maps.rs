//! Words as piecewise-linear maps of [0,1].

use autostack::oracle::{equal, evaluate, generator_map};
use autostack::words::{parse, Generator};

fn main() {
    for g in Generator::ALL {
        println!("{g:>5}: {}", generator_map(g));
    }
    for w in ["[y,xyx^-2]", "[y,x^2yx^-3]", "xy", "yx", "yxy"] {
        let m = evaluate(&parse(w).unwrap());
        println!("{w:>14}: {m}{}", if m.is_identity() { "   (identity)" } else { "" });
    }
    let (a, b) = (evaluate(&parse("yxy").unwrap()), evaluate(&parse("xyx^-2yx^2").unwrap()));
    println!("yxy = xyx^-2yx^2: {}", equal(&a, &b));
}
