//! Conjugacy classes, centre and the class equation.
use finis::structure::{center, class_equation_sum, conjugacy_classes, egyptian_decompositions};
use finis::PermGroup;

fn main() -> finis::Result<()> {
    let g = PermGroup::symmetric(5);
    let t = conjugacy_classes(&g)?;
    println!("S5 has {} classes", t.len());
    for c in 0..t.len() {
        println!("  {:<14} size {:>2}  order {}", t.representatives[c].to_string(), t.sizes[c], t.element_order(c));
    }
    println!("|Z(S5)| = {}", center(&g)?.order()?);
    println!("Σ 1/|C(x)| over classes = {}", class_equation_sum(&g)?);

    // groups with 4 classes satisfy 1 = 1/c₁ + ... + 1/c₄ with centralizer orders cᵢ
    for d in egyptian_decompositions(4)? {
        println!("  {d:?}");
    }
    Ok(())
}
