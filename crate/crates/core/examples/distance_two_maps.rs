//! Split a bijection that preserves distance two into two automorphisms,
//! one per parity class.
//!
//!     cargo run --example distance_two_maps -- "s1 s2" "s4 s5"

use coxclique::cayley::full_group;
use coxclique::half::{builtin_automorphism, decompose_distance2_bijection, patched_right_mul, Builtin};
use coxclique::system::parse_preset;
use coxclique::Element;

fn main() -> Result<(), coxclique::Error> {
    let mut args = std::env::args().skip(1);
    let sys = parse_preset("A5")?;
    let ball = full_group(&sys, 10_000)?;
    let w = Element::parse(&sys, &args.next().unwrap_or_else(|| "s1 s2".into()))?;
    let w2 = Element::parse(&sys, &args.next().unwrap_or_else(|| "s4 s5".into()))?;

    // v -> vw on odd elements, v -> vw' on even ones.
    let g = patched_right_mul(&sys, &ball, &w, &w2)?;
    println!("g preserves distance two: {}", g.preserves_distance_two(&ball));
    println!("g preserves adjacency:    {}", g.preserves_adjacency(&ball, &sys));

    let parts = decompose_distance2_bijection(&sys, &ball, &g)?;
    let r = |x: &Element| builtin_automorphism(&sys, &ball, Builtin::RightMul(x.clone()));
    println!("f1 = R_[{}]: {}", w.display(&sys), parts.f1 == r(&w)?);
    println!("f2 = R_[{}]: {}", w2.display(&sys), parts.f2 == r(&w2)?);
    println!("swaps classes: {}", parts.swapped);
    println!("g is an automorphism: {}", parts.is_automorphism);
    Ok(())
}
