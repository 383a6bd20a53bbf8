//! Prints p_{m,i} and q_{m,i} for m = 2..5 and i = 1..16.

use partlie::partitions::{count_p, count_q};

fn main() {
    let header: Vec<String> = (1..=16).map(|i| format!("{i:>4}")).collect();
    println!("{:<4}{}", "i", header.join(""));
    for m in 2..=5 {
        let p: Vec<String> = (1..=16).map(|i| format!("{:>4}", count_p(m, i))).collect();
        let q: Vec<String> = (1..=16).map(|i| format!("{:>4}", count_q(m, i))).collect();
        println!("p{m:<3}{}", p.join(""));
        println!("q{m:<3}{}", q.join(""));
    }
}
