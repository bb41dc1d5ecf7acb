//! Hall subgroups of solvable groups, Sylow systems and p-complements.
use finis::cli::parse_group_spec;
use finis::hall::{hall_conjugacy, hall_subgroup, p_complement, sylow_system, PrimeSet};
use finis::sylow::subgroup_conj_right;

fn main() -> finis::Result<()> {
    let g = parse_group_spec("S4 x C5")?.build()?;
    for pi in [PrimeSet::new([2]), PrimeSet::new([2, 5]), PrimeSet::all_but(2)] {
        let h = hall_subgroup(&g, &pi)?;
        println!("Hall {pi}-subgroup of S4 x C5: order {}", h.order()?);
    }

    let pi = PrimeSet::new([2, 5]);
    let h1 = hall_subgroup(&g, &pi)?;
    let mut h2 = h1.clone();
    for x in g.elements()?.iter() {
        h2 = subgroup_conj_right(&h1, x)?;
        if !h2.same_elements(&h1)? {
            break;
        }
    }
    let c = hall_conjugacy(&g, &pi, &h1, &h2)?;
    println!("conjugating one Hall {pi}-subgroup to another: {c}");

    let sys = sylow_system(&g)?;
    println!("Sylow system primes {:?}, pairwise permutable: {}", sys.sylows.keys().collect::<Vec<_>>(), sys.permutable);

    let a5 = parse_group_spec("A5")?.build()?;
    let pc = p_complement(&a5, 2)?;
    println!("A5 has a 2-complement: {} (search exhaustive: {})", pc.group.is_some(), pc.exhaustive);
    Ok(())
}
