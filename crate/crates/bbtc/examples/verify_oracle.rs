//! Cross-checking every counting route against brute force, the library
//! side of the `verify` subcommand.
//!
//! Run: cargo run --example verify_oracle

use bbtc::io::InputFormat;
use bbtc::runspec::{cmd_gen, cmd_verify, GenKind};

fn main() {
    let dir = std::env::temp_dir().join("bbtc-example-graphs");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("verify_me.txt");
    cmd_gen(GenKind::Gnp { n: 150, q: 0.08 }, 9, &path).unwrap();

    let report = cmd_verify(&path, InputFormat::EdgeList, 500).unwrap();
    println!("n = {}, m = {}", report.n, report.m);
    for count in &report.counts {
        println!("  {:>12}: {}", count.method, count.tau);
    }
    match &report.first_mismatch {
        None => println!("all routes agree"),
        Some((a, at, b, bt)) => println!("MISMATCH: {a} = {at} but {b} = {bt}"),
    }
    assert!(report.ok);
}
