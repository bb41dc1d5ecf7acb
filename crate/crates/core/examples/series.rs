//! Derived and lower central series, composition factors, Frattini subgroups.
use finis::arith::is_prime_power;
use finis::cli::parse_group_spec;
use finis::structure::{classify, derived_series, frattini_via_lattice, frattini_via_powers, jordan_holder, lower_central_series};

fn main() -> finis::Result<()> {
    for text in ["S4", "SL(2,3)", "Q8", "D4 x C3", "A5"] {
        let g = parse_group_spec(text)?.build()?;
        let r = classify(&g)?;
        let jh = jordan_holder(&g)?;
        println!("{text}: order {}", g.order()?);
        println!("  solvable {} (derived length {:?}), nilpotent {} (class {:?})", r.solvable, r.class, r.nilpotent, r.nilpotency_class);
        println!("  derived series orders {:?}", orders(&derived_series(&g)?.terms)?);
        println!("  lower central orders  {:?}", orders(&lower_central_series(&g)?.terms)?);
        println!("  composition factors   {:?}", jh.factor_multiset());
        let phi = frattini_via_lattice(&g)?;
        if is_prime_power(g.order()? as u64) {
            let by_powers = frattini_via_powers(&g)?;
            println!("  Φ(G) has order {} (power-commutator path agrees: {})", phi.order()?, by_powers.same_elements(&phi)?);
        } else {
            println!("  Φ(G) has order {}", phi.order()?);
        }
    }
    Ok(())
}

fn orders(terms: &[finis::PermGroup]) -> finis::Result<Vec<usize>> {
    terms.iter().map(|t| t.order()).collect()
}
