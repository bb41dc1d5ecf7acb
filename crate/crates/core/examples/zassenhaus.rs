//! Complements to normal Hall subgroups and their conjugacy.
use finis::cli::parse_group_spec;
use finis::coh::{complement_conjugacy, zassenhaus_complement};
use finis::sylow::{subgroup_conj_right, sylow};

fn main() -> finis::Result<()> {
    for (text, p) in [("C7 : C3 via power(2)", 7), ("AGL(1,5)", 5), ("(C3 x C3) : C4 via matrix([[0,2],[1,0]])", 3)] {
        let e = parse_group_spec(text)?.build()?;
        let a = sylow(&e, p)?;
        let k = zassenhaus_complement(&e, &a)?;
        println!("{text}: normal Sylow {p}-subgroup of order {}, complement of order {}", a.order()?, k.order()?);
        let y = e.elements()?.last().cloned().expect("nonempty");
        let k2 = subgroup_conj_right(&k, &y)?;
        let x = complement_conjugacy(&e, &a, &k, &k2)?;
        println!("  complements conjugate via {x}");
    }
    Ok(())
}
