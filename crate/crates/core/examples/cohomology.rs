//! Cohomology of small modules and the extensions built from 2-cocycles.
use finis::coh::{cohomology, extension_from_cocycle, split_class, FinAbGroup, GModule};
use finis::cli::parse_group_spec;

fn main() -> finis::Result<()> {
    let c2 = parse_group_spec("C2")?.build()?;
    let m = GModule::trivial(c2, FinAbGroup::cyclic(2))?;
    for n in 0..=3 {
        println!("H^{n}(C2, Z/2) = {}", cohomology(&m, n)?.group);
    }
    let h2 = cohomology(&m, 2)?;
    for f in &h2.representatives {
        let e = extension_from_cocycle(&m, f)?;
        let (split, _) = split_class(&m, f)?;
        let max = e.group.elements()?.iter().map(|x| x.order()).max().unwrap_or(1);
        println!("  extension of order {}: split {split}, largest element order {max}", e.group.order()?);
    }

    let s3 = parse_group_spec("S3")?.build()?;
    let signs: Vec<i64> = s3.generators().iter().map(|s| s.sign() as i64).collect();
    for (name, mults) in [("trivial", vec![1; signs.len()]), ("sign", signs)] {
        let m = GModule::cyclic(s3.clone(), 4, &mults)?;
        let hs: Vec<String> = (0..=2).map(|n| cohomology(&m, n).map(|h| h.group.to_string())).collect::<finis::Result<_>>()?;
        println!("S3 acting on Z/4 by the {name} action: H⁰, H¹, H² = {}", hs.join(", "));
    }
    Ok(())
}
