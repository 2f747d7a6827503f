//! Small LaTeX rendering helpers shared by the table emitters.

use novikov_core::arith::Rat;
use novikov_core::combinatorics::Partition;
use num_traits::Signed;

pub fn partition_latex(p: &Partition) -> String {
    if p.is_empty() {
        return "(0)".to_string();
    }
    format!(
        "({})",
        p.parts()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

pub fn latex_rational(c: &Rat) -> String {
    let sign = if c.is_negative() { "-" } else { "" };
    let a = c.abs();
    if a.is_integer() {
        format!("{}{}", sign, a.numer())
    } else {
        format!("{}\\frac{{{}}}{{{}}}", sign, a.numer(), a.denom())
    }
}
