//! Generalized amplitude damping and the local filter acting on one qubit.

use horizon_gtn::noise::{
    filter_operator, gad_from_bath, gad_from_bath_thermal, gad_kraus, BathParams, FilterParams, GadParams, KrausSet,
};
use horizon_gtn::qcore::{apply_single_qubit_kraus, CMatrix, DensityMatrix, ModeLabel, C64};

fn show(label: &str, rho: &DensityMatrix) {
    let e = rho.entries();
    println!(
        "{label:<22} [[{:.4}, {:.4}], [{:.4}, {:.4}]]  tr = {:.4}",
        e[(0, 0)].re,
        e[(0, 1)].re,
        e[(1, 0)].re,
        e[(1, 1)].re,
        rho.trace()
    );
}

fn main() -> horizon_gtn::Result<()> {
    let h = C64::new(0.5, 0.0);
    let plus = DensityMatrix::new(CMatrix::from_element(2, 2, h), vec![ModeLabel::A])?;
    show("|+><+|", &plus);

    for (r, p) in [(0.4, 1.0), (0.4, 0.5), (1.0, 0.0)] {
        let k = gad_kraus(GadParams::new(r, p)?);
        let out = apply_single_qubit_kraus(&plus, &k, ModeLabel::A)?;
        show(&format!("GAD r={r} p={p}"), &out);
    }

    let m = KrausSet::non_trace_preserving(vec![filter_operator(FilterParams::active(0.8)?)?]);
    let filtered = apply_single_qubit_kraus(&plus, &m, ModeLabel::A)?;
    show("filter f=0.8", &filtered);
    let (norm, z) = filtered.normalize()?;
    show(&format!("normalized (Z={z:.2})"), &norm);

    // relaxation-rate mapping; the literal rate is negative, the thermal
    // variant is not
    let bath = BathParams::new(0.3, 2.0, 1.0, 0.5)?;
    match gad_from_bath(&bath) {
        Ok(g) => println!("literal rate: r = {:.6}", g.r),
        Err(e) => println!("literal rate: {e}"),
    }
    let g = gad_from_bath_thermal(&bath)?;
    println!("thermal rate: r = {:.6}, p = {:.6}", g.r, g.p);
    Ok(())
}
