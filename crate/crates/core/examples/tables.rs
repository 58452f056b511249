//! Prints the period-count diagonal with growth roots and the toroidal
//! count grid for small sizes.

use mosaic_core::{count, Limits};

fn main() {
    let limits = Limits::default();
    println!("n  D_P(n,n)  root");
    for n in 1..=8 {
        let g = count::growth_metric(n, &limits).unwrap();
        println!("{n}  {}  {}", g.period_count, g.root_string());
    }
    println!();
    println!("toroidal D_T(m,n)");
    for m in 1..=5 {
        for n in m..=5 {
            let r = count::count_toroidal(m, n, &limits).unwrap();
            println!("({m},{n}) = {}  [{}]", r.value, r.method);
        }
    }
}
