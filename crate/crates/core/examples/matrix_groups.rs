//! Classical groups over finite fields, realized as permutation groups on vectors.
use finis::ffgroups::{realize, theoretical_order, MatrixGroupSpec, MatrixKind};

fn main() -> finis::Result<()> {
    let specs = [
        MatrixGroupSpec { kind: MatrixKind::GL, n: 2, q: 3 },
        MatrixGroupSpec { kind: MatrixKind::SL, n: 2, q: 5 },
        MatrixGroupSpec { kind: MatrixKind::PSL, n: 2, q: 7 },
        MatrixGroupSpec { kind: MatrixKind::GL, n: 3, q: 2 },
        MatrixGroupSpec { kind: MatrixKind::B1, n: 3, q: 3 },
        MatrixGroupSpec { kind: MatrixKind::AGL1, n: 1, q: 8 },
    ];
    for spec in specs {
        let g = realize(&spec)?;
        println!(
            "{spec:<10} degree {:>3}  order {:>4}  formula {}",
            g.degree(),
            g.order()?,
            theoretical_order(&spec)?
        );
    }
    Ok(())
}
