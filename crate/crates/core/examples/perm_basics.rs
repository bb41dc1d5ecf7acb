//! Permutations, subgroups, cosets and quotients.
use finis::perm::{cosets, quotient, PermGroup, Permutation, Side};

fn main() -> finis::Result<()> {
    let a = Permutation::parse("(1 2 3 4)", 4)?;
    let b = Permutation::parse("(1 3)", 4)?;
    println!("a = {a}, b = {b}");
    println!("a∘b = {}, order of a = {}, sign of b = {}", a.compose(&b), a.order(), b.sign());
    println!("[a, b] = {}", Permutation::commutator(&a, &b));

    let s4 = PermGroup::symmetric(4);
    let d4 = s4.subgroup_generated(&[a, b])?;
    println!("|S4| = {}, |<a, b>| = {}", s4.order()?, d4.order()?);
    for c in cosets(&s4, &d4, Side::Left)? {
        println!("  coset rep {}", c.representative);
    }

    let v4 = s4.subgroup_generated(&[
        Permutation::parse("(1 2)(3 4)", 4)?,
        Permutation::parse("(1 3)(2 4)", 4)?,
    ])?;
    println!("V4 normal in S4: {}", v4.is_normal_in(&s4)?);
    let (q, _) = quotient(&s4, &v4)?;
    println!("S4/V4 has order {} and is abelian: {}", q.order()?, q.is_abelian());
    Ok(())
}
