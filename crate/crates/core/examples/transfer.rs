//! The transfer homomorphism and Gauss's lemma.
use finis::cli::parse_group_spec;
use finis::transfer::{cyclic_2sylow_obstruction, legendre_gauss, transfer_image_in_sylow, TransferMap};

fn main() -> finis::Result<()> {
    let g = parse_group_spec("S4")?.build()?;
    let a4 = parse_group_spec("A4")?.build()?;
    let h = g.subgroup_generated(a4.generators())?;
    let t = TransferMap::new(&g, &h)?;
    for s in ["(1 2)", "(1 2 3)", "(1 2 3 4)"] {
        let x = finis::Permutation::parse(s, 4)?;
        println!("Ver_{{S4 → A4}}{s} = {:?} in A4^ab", t.transfer(&x)?.coords);
    }

    for p in [2, 3] {
        let r = transfer_image_in_sylow(&parse_group_spec("D5")?.build()?, p);
        match r {
            Ok(r) => println!("D5, p = {p}: transfer image {} of order equal to |P ∩ Z(N(P))| = {}", r.image, r.fixed_order),
            Err(e) => println!("D5, p = {p}: {e}"),
        }
    }
    println!("S3 has a normal 2-complement forced by a cyclic Sylow 2: {}", cyclic_2sylow_obstruction(&parse_group_spec("S3")?.build()?)?);

    let p = 23;
    let residues: Vec<i64> = (1..p as i64).filter(|&a| legendre_gauss(a, p).map(|l| l == 1).unwrap_or(false)).collect();
    println!("quadratic residues mod {p}: {residues:?}");
    Ok(())
}
