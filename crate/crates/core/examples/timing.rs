//! Wall-clock timings for the heavier exact computations.
//!
//! `cargo run --release -p mv-core --example timing`

use std::time::Instant;

use mv_core::volumes::{a_value_fast, minimal_strata_a};
use mv_core::MemoStore;

fn main() {
    let t = Instant::now();
    let minimal = minimal_strata_a(50);
    let digits = minimal[49].numerator().to_string().len();
    println!("a(1..99), 50 genera:  {:>10.2?}  (last numerator has {digits} digits)", t.elapsed());

    let store = MemoStore::new();
    for profile in ["40,40", "26,26,27", "9,9,9,9,9"] {
        let t = Instant::now();
        a_value_fast(&profile.parse().unwrap(), &store);
        println!("a({profile}):{:>w$.2?}", t.elapsed(), w = 22 - profile.len());
    }
}
