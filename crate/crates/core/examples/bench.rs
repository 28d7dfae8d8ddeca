use mdlat_core::lattice::*;
use mdlat_core::pressure::*;
use mdlat_core::legendre::*;
use std::time::Instant;

fn main() {
    for (kind, order) in [
        (LatticeKind::Square, 7usize),
        (LatticeKind::Triangular, 6),
        (LatticeKind::Hexagonal, 7),
        (LatticeKind::Chain, 10),
    ] {
        let spec = LatticeSpec::of(kind);
        let t0 = Instant::now();
        let f = compute(spec, order, Strategy::default_for(kind), true).unwrap();
        let e = entropy_p_expansion(&f).unwrap();
        println!(
            "{:11} K={} b={:?}  {:.2?}",
            kind.name(),
            order,
            e.b_coeffs().iter().map(mdlat_core::ratseries::format_rational).collect::<Vec<_>>(),
            t0.elapsed()
        );
    }
}
