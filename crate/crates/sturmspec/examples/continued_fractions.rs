//! Continued fraction expansions, convergents and the Sturmian words they
//! generate.
//!
//! cargo run --example continued_fractions

use num_rational::Rational64;
use sturmspec::contfrac::{
    concatenation_holds, convergents, is_rotation, parse_alpha, rational_digits, substitution_word, word_of, ContFrac,
};

fn bits(b: &[u8]) -> String {
    b.iter().map(|x| char::from(b'0' + x)).collect()
}

fn main() -> sturmspec::Result<()> {
    let golden = parse_alpha("golden")?;
    println!("golden approximants");
    for k in 1..=7 {
        let c = ContFrac::approximant(&golden, k)?;
        let (p, q) = convergents(&golden, k as i64);
        let w = word_of(Rational64::new(p, q));
        println!("  {:<22} {p:>2}/{q:<2}  {}", c.to_string(), bits(&w.bits));
    }

    // The substitution words are rotations of the mechanical periods.
    let silver = parse_alpha("silver")?;
    let (p, q) = convergents(&silver, 4);
    let s = substitution_word(&silver, 4);
    let w = word_of(Rational64::new(p, q));
    println!("\nsilver level 4 ({p}/{q})");
    println!("  mechanical   {}", bits(&w.bits));
    println!("  substitution {}", bits(&s));
    println!("  rotation: {}", is_rotation(&s, &w.bits));
    println!("  period built from levels 3 and 2: {}", concatenation_holds(&silver, 4));

    let d = rational_digits(5, 13)?;
    println!("\n5/13 has digits {d:?}, expansion {}", ContFrac::from_alpha(&d)?);
    Ok(())
}
