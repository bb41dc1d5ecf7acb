//! Solvability of groups of order p^a q^b through characters.
use finis::characters::{burnside_solvable, burnside_witness, character_table};
use finis::cli::parse_group_spec;

fn main() -> finis::Result<()> {
    for text in ["S4", "SL(2,3)", "D4 x C9", "C7 : C3 via power(2)"] {
        let g = parse_group_spec(text)?.build()?;
        let ct = character_table(&g)?;
        match burnside_witness(&ct)? {
            Some(w) => println!(
                "{text}: class of {} has prime-power size {}, χ{} has kernel of order {}",
                w.element,
                ct.classes.sizes[w.class],
                w.character,
                w.normal_subgroup.order()?
            ),
            None => println!("{text}: no witness"),
        }
        println!("  solvable: {}", burnside_solvable(&g)?);
    }
    let a5 = parse_group_spec("A5")?.build()?;
    println!("A5: {:?}", burnside_solvable(&a5).map_err(|e| e.to_string()));
    Ok(())
}
