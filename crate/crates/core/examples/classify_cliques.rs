//! Enumerate the maximal 2-cliques of a group and show how each one is
//! described.
//!
//!     cargo run --example classify_cliques -- D4
//!     cargo run --example classify_cliques -- "Universal(3)" 3

use coxclique::cliques::{enumerate_maximal_2cliques, tally, Scope, TypeTag};
use coxclique::CoxeterSystem;

fn main() -> Result<(), coxclique::Error> {
    let mut args = std::env::args().skip(1);
    let group = args.next().unwrap_or_else(|| "D4".into());
    let scope = match args.next().and_then(|r| r.parse().ok()) {
        Some(radius) => Scope::ball(radius),
        None => Scope::full(),
    };
    let sys = CoxeterSystem::parse(&group)?;
    let found = enumerate_maximal_2cliques(&sys, scope)?;
    let counts = tally(&found);
    println!(
        "{}: {} maximal 2-cliques, {} cosets Sw, {} commuting triples, {} braid triples",
        sys.name(),
        counts.total,
        counts.s_coset,
        counts.commuting_triple,
        counts.braid
    );

    // One example of each kind.
    for tag in [TypeTag::SCoset, TypeTag::CommutingTriple, TypeTag::Braid] {
        let Some((clique, class)) = found.iter().find(|(_, class)| class.has(tag)) else {
            println!("{tag:>16}: none");
            continue;
        };
        let t = class.get(tag).unwrap();
        let gens: Vec<&str> = t.generators().into_iter().map(|g| sys.gen_name(g)).collect();
        println!(
            "{tag:>16}: {}  with w = {}{}",
            clique.to_text(&sys),
            t.w().display(&sys),
            if gens.is_empty() { String::new() } else { format!(", generators {}", gens.join(" ")) }
        );
    }
    Ok(())
}
