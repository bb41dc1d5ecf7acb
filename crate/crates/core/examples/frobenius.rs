//! Frobenius groups, their kernels, and the kernel recovered from characters.
use finis::characters::frobenius_kernel_via_characters;
use finis::cli::{parse_group_spec, parse_subgroup};
use finis::sylow::sylow;
use finis::frobenius::{frobenius_couple, frobenius_kernel, is_frobenius_couple, thompson_nilpotency_check};

fn main() -> finis::Result<()> {
    for (text, sub) in [("AGL(1,7)", "stab(1)"), ("C7 : C3 via power(2)", "sylow(3)"), ("A4", "(1 2 3)"), ("S4", "(1 2 3)")] {
        let g = parse_group_spec(text)?.build()?;
        let h = match sub.strip_prefix("sylow(").and_then(|r| r.strip_suffix(')')) {
            Some(p) => sylow(&g, p.parse().expect("prime"))?,
            None => parse_subgroup(&g, sub)?,
        };
        if !is_frobenius_couple(&g, &h)? {
            println!("{text} with H = <{sub}> is not a Frobenius couple");
            continue;
        }
        let fc = frobenius_couple(&g, &h)?;
        let k = frobenius_kernel(&fc)?;
        let nil = thompson_nilpotency_check(&fc)?.nilpotent;
        let via_chars = frobenius_kernel_via_characters(&g, &h)?;
        println!(
            "{text}: |H| = {}, kernel order {}, nilpotent {nil}, character kernel agrees {}",
            h.order()?,
            k.order()?,
            via_chars.same_elements(&k)?
        );
    }
    Ok(())
}
