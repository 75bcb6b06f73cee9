//! Check the clique classification over the whole built-in corpus and
//! print a table of counts.

use std::time::Instant;

use coxclique::cliques::{corpus, enumerate_maximal_2cliques, tally, verify_class, Scope};
use coxclique::system::parse_preset;

fn main() -> Result<(), coxclique::Error> {
    println!("{:<14} {:<12} {:>7} {:>7} {:>7} {:>7} {:>9}", "group", "scope", "total", "Sw", "triple", "braid", "time");
    for (preset, scope) in corpus() {
        let sys = parse_preset(preset)?;
        let start = Instant::now();
        let found = enumerate_maximal_2cliques(&sys, scope)?;
        for (clique, class) in &found {
            verify_class(&sys, clique, class)?;
        }
        let c = tally(&found);
        let scope = match scope {
            Scope::FullGroup { .. } => "group".to_string(),
            Scope::Ball { radius, .. } => format!("ball r={radius}"),
        };
        println!(
            "{preset:<14} {scope:<12} {:>7} {:>7} {:>7} {:>7} {:>9.1?}",
            c.total,
            c.s_coset,
            c.commuting_triple,
            c.braid,
            start.elapsed()
        );
    }
    Ok(())
}
