//! Sylow subgroups, their counts and fusion control.
use finis::ffgroups::{realize, MatrixGroupSpec, MatrixKind};
use finis::structure::center;
use finis::sylow::{all_sylows, burnside_fusion_witness, miller_wielandt_count, sylow, sylow_report};
use finis::FinisError;

fn main() -> finis::Result<()> {
    let g = realize(&MatrixGroupSpec { kind: MatrixKind::PSL, n: 2, q: 7 })?;
    for p in [2, 3, 7] {
        let r = sylow_report(&g, p)?;
        println!(
            "p = {p}: |P| = {}, n_p = {}, |G : N(P)| = {}, binomial ≡ {}",
            r.order,
            r.count,
            r.normalizer_index,
            miller_wielandt_count(&g, p)?
        );
    }
    println!("distinct Sylow 3-subgroups: {}", all_sylows(&g, 3)?.len());

    // central elements of a Sylow subgroup conjugate in G are conjugate in N(P)
    let s = sylow(&g, 3)?;
    let z = center(&s)?;
    let x = z.elements()?.iter().find(|x| !x.is_identity()).cloned().expect("Z(P) ≠ 1");
    let y = x.inverse();
    match burnside_fusion_witness(&g, &s, &x, &y) {
        Ok(w) => println!("{x} and {y} are conjugate by {w} ∈ N(P)"),
        Err(FinisError::NotCentral) => println!("{x} is not central in P"),
        Err(e) => return Err(e),
    }
    Ok(())
}
