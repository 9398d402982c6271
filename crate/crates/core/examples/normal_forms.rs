//! Normal forms three ways: the Σ-derivation, closed-form multiplication and
//! the prefix-rewriting system.
//!
//! ```text
//! cargo run --example normal_forms -- "yx^3y"
//! ```

use autostack::cprs::rewrite_to_irreducible;
use autostack::normal_form::{normalize_by_multiplication, sigma_normalize};
use autostack::words::parse;

fn main() {
    let input = std::env::args().nth(1).unwrap_or_else(|| "y x^2 y^-1 x y".into());
    let w = parse(&input).expect("word");
    let (nf, derivation) = sigma_normalize(&w).expect("within length cap");
    print!("{}", derivation.render());
    println!("sizes of y-rules: {:?}", derivation.y_rule_sizes());

    let by_mult = normalize_by_multiplication(&w);
    let (by_rewriting, steps) = rewrite_to_irreducible(&w).unwrap();
    println!("multiplication: {by_mult}");
    println!("prefix rewriting ({steps} steps): {by_rewriting}");
    assert_eq!(nf, by_mult);
    assert_eq!(nf.to_word(), by_rewriting);

    let p = nf.profile();
    println!(
        "cumulative exponents {:?}, m = {}, m' = {}",
        p.s.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
        p.m,
        p.m_prime
    );
}
