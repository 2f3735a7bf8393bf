//! Exact membership and one-sided approachability for the Cantor set.
//!
//! `cargo run -p realgame --example cantor_oracle -- 1/4 3/4 1/2 20/27`

use realgame::{cantor_cover, ternary_digits, CantorSet, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let points = if args.is_empty() {
        vec!["1/4", "1/3", "1/2", "2/3", "20/27", "0.75"].into_iter().map(String::from).collect()
    } else {
        args
    };
    println!("{:<8} {:<20} {:>5} {:>6} {:>5}  next above", "q", "ternary", "in C", "right", "left");
    for text in points {
        let q: Rational = text.parse()?;
        let t = ternary_digits(&q)?;
        let head: String = t.preperiod.iter().map(u8::to_string).collect();
        let cycle: String = t.period.iter().map(u8::to_string).collect();
        let digits = if cycle.is_empty() { format!("0.{head}") } else { format!("0.{head}({cycle})") };
        let c = CantorSet.classify(&q);
        let next = CantorSet.next_above(&q).map_or("-".to_string(), |n| n.to_string());
        println!(
            "{:<8} {:<20} {:>5} {:>6} {:>5}  {next}",
            q.to_string(),
            digits,
            c.in_set,
            c.right_approachable.unwrap_or(false),
            c.left_approachable.unwrap_or(false)
        );
    }
    println!("\ndepth-2 cover: {}", cantor_cover(2)?);
    Ok(())
}
