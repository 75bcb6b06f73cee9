//! Balls of the Cayley graph and their half-graphs, exported as DOT.
//!
//!     cargo run --example cayley_ball -- Atilde2 3 > ball.dot

use coxclique::cayley::{generate_ball, parity_split};
use coxclique::{CoxeterSystem, Element};

fn main() -> Result<(), coxclique::Error> {
    let mut args = std::env::args().skip(1);
    let group = args.next().unwrap_or_else(|| "Atilde2".into());
    let radius: usize = args.next().and_then(|r| r.parse().ok()).unwrap_or(3);
    let sys = CoxeterSystem::parse(&group)?;

    let ball = generate_ball(&sys, &Element::identity(&sys), radius, 100_000)?;
    let (odd, even) = parity_split(&sys, &ball);
    eprintln!(
        "{}: {} vertices within distance {radius}, {} Cayley edges; W1 part has {} vertices and {} distance-two edges, W2 part {} and {}",
        sys.name(),
        ball.len(),
        ball.edges().len(),
        odd.vertices.len(),
        odd.edges.len(),
        even.vertices.len(),
        even.edges.len()
    );
    print!("{}", ball.to_dot(&sys));
    Ok(())
}
