//! Character tables from the class algebra, with orthogonality and integrality checks.
use finis::characters::{character_table, integrality_report, regular_character};
use finis::cli::parse_group_spec;

fn main() -> finis::Result<()> {
    for text in ["S4", "A5", "Q8", "C7 : C3 via power(2)"] {
        let g = parse_group_spec(text)?.build()?;
        let ct = character_table(&g)?;
        println!("{text} (order {}), degrees {:?}", g.order()?, ct.degrees);
        print!("{}", ct.render());
        let r = integrality_report(&ct)?;
        println!(
            "  max orthogonality error {:.1e}, values algebraic integers {}",
            ct.verification.max_error, r.values_integral
        );
        let reg = ct.decompose(&regular_character(&g)?)?;
        let mult: Vec<i64> = reg.iter().map(|c| c.re.round() as i64).collect();
        println!("  regular character multiplicities {mult:?}\n");
    }
    Ok(())
}
