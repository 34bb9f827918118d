//! Prints the order of `𝒪ₙ`, the size of its completed rewriting system and
//! the time taken, for each degree given on the command line.
//!
//! `cargo run --release --example orders -- 2 3 4 5 6`

use std::time::Instant;

use origami_monoid::origami::{build_monoid, default_limits};
use origami_monoid::rewriting::EnumerationOptions;

fn main() {
    let degrees: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("degree")).collect();
    let degrees = if degrees.is_empty() { vec![2, 3, 4, 5] } else { degrees };
    println!("{:>3} {:>10} {:>7} {:>10}", "n", "order", "rules", "seconds");
    for n in degrees {
        let t = Instant::now();
        match build_monoid(n, &default_limits(), EnumerationOptions::default()) {
            Ok(m) => println!("{n:>3} {:>10} {:>7} {:>10.3}", m.monoid.len(), m.system().rules().len(), t.elapsed().as_secs_f64()),
            Err(e) => println!("{n:>3} error: {e}"),
        }
    }
}
