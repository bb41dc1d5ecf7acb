use crate::arith::prime_power;
use crate::error::{FinisError, Result};
use crate::perm::PermGroup;
use crate::structure::lattice::{Lattice, LATTICE_LIMIT};
use crate::structure::derived_subgroup;

/// `Φ(G) = (G, G)·Gᵖ` for a `p`-group.
pub fn frattini_via_powers(g: &PermGroup) -> Result<PermGroup> {
    let n = g.order()? as u64;
    if n == 1 {
        return Ok(g.clone());
    }
    let (p, _) = prime_power(n).ok_or_else(|| {
        FinisError::PreconditionViolated(format!("order {n} is not a prime power"))
    })?;
    let mut gens = derived_subgroup(g)?.generators().to_vec();
    for x in g.elements()? {
        let y = x.pow(p as i64);
        if !y.is_identity() && !gens.contains(&y) {
            gens.push(y);
        }
    }
    g.subgroup_generated(&gens)
}

/// Intersection of all maximal subgroups.
pub fn frattini_via_lattice(g: &PermGroup) -> Result<PermGroup> {
    let lattice = Lattice::new(g)?;
    let mut phi = g.clone();
    for m in lattice.maximal(g) {
        phi = phi.intersection(&m)?;
    }
    Ok(phi)
}

/// The Frattini subgroup; both constructions are run when both apply and
/// must agree.
pub fn frattini_subgroup(g: &PermGroup) -> Result<PermGroup> {
    let n = g.order()?;
    let p_group = n == 1 || prime_power(n as u64).is_some();
    let small = n <= LATTICE_LIMIT;
    match (p_group, small) {
        (true, true) => {
            let a = frattini_via_powers(g)?;
            let b = frattini_via_lattice(g)?;
            if !a.same_elements(&b)? {
                return Err(FinisError::inconsistency("Frattini constructions disagree"));
            }
            Ok(a)
        }
        (true, false) => frattini_via_powers(g),
        (false, true) => frattini_via_lattice(g),
        (false, false) => Err(FinisError::TooLarge(format!(
            "Frattini subgroup of a non-p-group needs |G| <= {LATTICE_LIMIT}, got {n}"
        ))),
    }
}
