use std::io::Write;

use super::meissner::{reuleaux_area, MeissnerPolyhedron};
use crate::error::Result;

/// Column names of the analysis CSV.
///
/// Pair rows are labelled `pair_<i>` and carry the retained and smoothed
/// edges as `a-b`, their lengths, dihedral angles, the wedge angle and the
/// contribution `f` in `value`. Summary rows `area`, `volume` and
/// `reuleaux_area` fill only `value`.
pub const REPORT_HEADER: [&str; 9] = [
    "row",
    "retained",
    "smoothed",
    "theta",
    "theta_dual",
    "phi",
    "phi_dual",
    "alpha",
    "value",
];

pub fn write_report<W: Write>(m: &MeissnerPolyhedron, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(REPORT_HEADER)?;
    for (i, o) in m.oriented().enumerate() {
        let alpha = m.pairs()[i].geometry.alpha;
        w.write_record([
            format!("pair_{i}"),
            format!("{}-{}", o.retained.0, o.retained.1),
            format!("{}-{}", o.smoothed.0, o.smoothed.1),
            num(o.lengths.theta),
            num(o.lengths.theta_dual),
            num(o.phi_retained),
            num(o.phi_smoothed),
            num(alpha),
            num(o.f()),
        ])?;
    }
    for (label, value) in [
        ("area", m.area()),
        ("volume", m.volume()),
        ("reuleaux_area", reuleaux_area(m.pairs())),
    ] {
        let mut row = vec![label.to_string()];
        row.extend(std::iter::repeat_n(String::new(), 7));
        row.push(num(value));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn num(x: f64) -> String {
    format!("{x:.15}")
}
