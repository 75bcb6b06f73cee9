//! Build systems from a diagram file or from products of presets.

use coxclique::cliques::{count_by_type, Scope};
use coxclique::system::{parse_diagram, parse_preset};

const DIAGRAM: &str = "\
# a square with one label-4 edge and a free diagonal
4
1 2 3
2 3 4
3 4 3
4 1 3
1 3 inf
";

fn main() -> Result<(), coxclique::Error> {
    let square = parse_diagram(DIAGRAM)?;
    print!("{}", square.to_diagram());
    let c = count_by_type(&square, Scope::ball(3))?;
    println!("cliques meeting the radius-3 ball: {c:?}\n");

    for name in ["A2xA1^2", "A2*A1", "I2(5)xI2(3)"] {
        let sys = parse_preset(name)?;
        let scope = if name.contains('*') { Scope::ball(4) } else { Scope::full() };
        let c = count_by_type(&sys, scope)?;
        println!("{name}: rank {}, {c:?}", sys.rank());
    }
    Ok(())
}
