//! Rebuild a Cayley graph automorphism from its action on the odd half,
//! and watch the construction fail on the 4-cube.

use coxclique::cayley::{full_group, Parity};
use coxclique::half::{
    builtin_automorphism, extend_half_automorphism, extend_half_automorphism_any_rank, reversal,
    type_changing_witness, Builtin,
};
use coxclique::system::parse_preset;
use coxclique::Element;

fn main() -> Result<(), coxclique::Error> {
    let sys = parse_preset("A5")?;
    let ball = full_group(&sys, 10_000)?;
    let w = Element::parse(&sys, "s1 s3 s5 s2")?;

    let flip = builtin_automorphism(&sys, &ball, Builtin::Diagram(reversal(&sys)))?;
    let target = builtin_automorphism(&sys, &ball, Builtin::RightMul(w.clone()))?.compose(&flip);
    let half = target.restrict(&ball, Parity::Odd);
    println!("restricted v -> reverse(v)·[{}] to the {} odd elements", w.display(&sys), half.pairs().len());

    let rebuilt = extend_half_automorphism(&sys, &ball, &half)?;
    println!("extension agrees with the original map: {}", rebuilt == target);
    println!("provenance: {:?}", rebuilt.provenance());

    let cube = parse_preset("Cube(4)")?;
    let cube_ball = full_group(&cube, 100)?;
    let witness = type_changing_witness(&cube, &cube_ball, Parity::Odd)?.expect("the half 4-cube has one");
    println!("\nhalf 4-cube automorphism moving S onto a commuting triple:");
    for (a, b) in witness.pairs() {
        println!("  {:>12} -> {}", a.to_text(&cube), b.to_text(&cube));
    }
    match extend_half_automorphism(&cube, &cube_ball, &witness) {
        Err(e) => println!("with the rank check: {e}"),
        Ok(_) => unreachable!(),
    }
    match extend_half_automorphism_any_rank(&cube, &cube_ball, &witness) {
        Err(e) => println!("without it: {e}"),
        Ok(_) => println!("without it: extended"),
    }
    Ok(())
}
