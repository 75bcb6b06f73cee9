//! Reduced words, lengths, descents and the exchange condition.
//!
//!     cargo run --example word_problem -- H3 "s1 s2 s1 s2 s1 s3 s2"

use coxclique::element::{self, exchange_index, left_descents};
use coxclique::{CoxeterSystem, Element};

fn main() -> Result<(), coxclique::Error> {
    let mut args = std::env::args().skip(1);
    let group = args.next().unwrap_or_else(|| "B3".into());
    let text = args.next().unwrap_or_else(|| "s3 s2 s1 s2 s1 s3 s2 s3".into());
    let sys = CoxeterSystem::parse(&group)?;

    let typed = Element::parse(&sys, &text)?;
    println!("group {} of rank {}", sys.name(), sys.rank());
    println!("input      {text}");
    println!("normal     {}", typed.display(&sys));
    println!("length     {}", typed.len());

    let descents: Vec<&str> = left_descents(&sys, &typed).into_iter().map(|s| sys.gen_name(s)).collect();
    println!("descents   {}", descents.join(" "));

    // Every left descent can be exchanged against a letter of any reduced word.
    for s in left_descents(&sys, &typed) {
        let k = exchange_index(&sys, typed.word(), s)?;
        let mut shorter = typed.word().to_vec();
        shorter.remove(k);
        println!(
            "{} * w = w without letter {} = {}",
            sys.gen_name(s),
            k + 1,
            element::format_word(&sys, &shorter)
        );
    }

    let inverse = element::inverse(&sys, &typed);
    println!("inverse    {}", inverse.display(&sys));
    println!("d(w, e)    {}", element::distance(&sys, &typed, &Element::identity(&sys)));
    println!("support    {} generators", element::support(&sys, &typed).len());
    Ok(())
}
