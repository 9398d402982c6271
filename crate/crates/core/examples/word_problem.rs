//! Decides equality of two words by normal forms and cross-checks with the
//! piecewise-linear oracle.
//!
//! ```text
//! cargo run --example word_problem -- "x^-1yx" "y x^2 y^-1 x^-2"
//! ```

use autostack::cprs::rewrite_to_irreducible;
use autostack::oracle::{equal, evaluate};
use autostack::words::parse;

fn main() {
    let mut args = std::env::args().skip(1);
    let pairs: Vec<(String, String)> = match (args.next(), args.next()) {
        (Some(a), Some(b)) => vec![(a, b)],
        _ => vec![
            ("[y,xyx^-2]".into(), "".into()),
            ("x^-1yx".into(), "xyx^-1".into()),
            ("yxy".into(), "xyx^-2yx^2".into()),
        ],
    };
    for (a, b) in pairs {
        let (u, v) = (parse(&a).expect("first word"), parse(&b).expect("second word"));
        let by_rewriting = rewrite_to_irreducible(&u).unwrap().0 == rewrite_to_irreducible(&v).unwrap().0;
        let by_oracle = equal(&evaluate(&u), &evaluate(&v));
        assert_eq!(by_rewriting, by_oracle);
        println!("{u} {} {v}", if by_rewriting { "=" } else { "!=" });
    }
}
