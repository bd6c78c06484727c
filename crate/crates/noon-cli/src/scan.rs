use std::collections::BTreeMap;

use noon::optics::{build_noon_network, detector_operators};
use noon::projection::{noon_projection, SuperpositionCoeffs, NULL_THRESHOLD};
use noon::scenarios::{g4_type_two, PairTimingCase};
use noon::spectral::{
    gaussian_jsa, hom_visibility, misaligned_visibility, overlaps, p4_delay_direct, type_one_visibility,
    v2_from_geometry, MisalignmentGeometry, OverlapSet, Scheme, EDGE_TOLERANCE,
};

use crate::error::{invalid, CliError};
use crate::output::{Column, Metadata, ScanResult};
use crate::request::{Command, ScanRequest, SchemeArg};

fn tolerances() -> BTreeMap<String, f64> {
    BTreeMap::from([
        ("prune".to_string(), noon::fock::PRUNE_TOLERANCE),
        ("unitarity".to_string(), noon::fock::UNITARITY_TOLERANCE),
        ("null_threshold".to_string(), NULL_THRESHOLD),
        ("jsa_edge".to_string(), EDGE_TOLERANCE),
    ])
}

/// `start + k·(end − start)/points`, end excluded.
fn half_open(start: f64, end: f64, points: usize) -> Vec<f64> {
    (0..points).map(|k| start + (end - start) * k as f64 / points as f64).collect()
}

/// Evenly spaced, both ends included.
fn linspace(start: f64, end: f64, points: usize) -> Vec<f64> {
    (0..points)
        .map(|k| start + (end - start) * k as f64 / (points - 1) as f64)
        .collect()
}

/// Runs a resolved request. Identical requests give identical results.
pub fn run(req: &ScanRequest) -> Result<ScanResult, CliError> {
    let mut extra = BTreeMap::new();
    let columns = match req.command {
        Command::Project => project(req)?,
        Command::Fringe => fringe(req, &mut extra)?,
        Command::Dip => dip(req, &mut extra)?,
        Command::Visibility => visibility(req, &mut extra)?,
        Command::Cases => cases(),
    };
    if !columns.iter().all(|c| c.len() == columns[0].len() && c.is_finite()) {
        return Err(noon::Error::OutOfRange("scan produced ragged or non-finite columns".into()).into());
    }
    Ok(ScanResult {
        metadata: Metadata {
            request: req.clone(),
            version: noon::VERSION.to_string(),
            tolerances: tolerances(),
            extra,
        },
        columns,
    })
}

fn required<T: Copy>(v: Option<T>, name: &str) -> Result<T, CliError> {
    v.ok_or_else(|| invalid(format!("{name}: required")))
}

fn project(req: &ScanRequest) -> Result<Vec<Column>, CliError> {
    let net = build_noon_network(required(req.n, "n")?)?;
    let dets = detector_operators(&net);
    Ok(vec![
        Column::real("detector", (0..dets.len()).map(|k| k as f64).collect()),
        Column::real("phase_delay", net.phase_delays.clone()),
        Column::complex("coeff_h", dets.iter().map(|d| (d.coeff_h.re, d.coeff_h.im))),
        Column::complex("coeff_v", dets.iter().map(|d| (d.coeff_v.re, d.coeff_v.im))),
        Column::complex("ratio", dets.iter().map(|d| (d.ratio().re, d.ratio().im))),
    ])
}

fn fringe(req: &ScanRequest, extra: &mut BTreeMap<String, f64>) -> Result<Vec<Column>, CliError> {
    let n = required(req.n, "n")?;
    let net = build_noon_network(n)?;
    let phis = half_open(
        required(req.phi_start, "phi-start")?,
        required(req.phi_end, "phi-end")?,
        required(req.points, "points")?,
    );
    // one constant per N maps the network rate onto the closed form
    let reference = SuperpositionCoeffs::noon(n, std::f64::consts::PI / n as f64)?;
    let scale = net.simulate_coincidence(&reference.to_state())? / noon_projection(&reference);
    extra.insert("network_scale".into(), scale);
    let mut network = Vec::with_capacity(phis.len());
    let mut closed = Vec::with_capacity(phis.len());
    for &phi in &phis {
        let c = SuperpositionCoeffs::noon(n, phi)?;
        network.push(net.simulate_coincidence(&c.to_state())? / scale);
        closed.push(noon_projection(&c));
    }
    Ok(vec![
        Column::real("phi", phis),
        Column::real("p_network", network),
        Column::real("p_closed_form", closed),
    ])
}

fn dip(req: &ScanRequest, extra: &mut BTreeMap<String, f64>) -> Result<Vec<Column>, CliError> {
    let jsa = gaussian_jsa(
        required(req.sigma_plus, "sigma-plus")?,
        required(req.sigma_minus, "sigma-minus")?,
        0.0,
    )?;
    let tc = jsa.coherence_time();
    extra.insert("coherence_time".into(), tc);
    let start = req.dt_start.unwrap_or(-5.0 * tc);
    let end = req.dt_end.unwrap_or(5.0 * tc);
    let dts = linspace(start, end, required(req.points, "points")?);
    let o = overlaps(&jsa, &dts)?;
    extra.insert("a".into(), o.a);
    extra.insert("e".into(), o.e.re);
    let p4: Vec<f64> = (0..dts.len()).map(|k| o.p4(k)).collect();
    let direct = dts
        .iter()
        .map(|&dt| p4_delay_direct(&jsa, dt))
        .collect::<noon::Result<Vec<f64>>>()?;
    Ok(vec![
        Column::real("dt", dts),
        Column::real("p4", p4),
        Column::real("p4_direct", direct),
    ])
}

fn visibility(req: &ScanRequest, extra: &mut BTreeMap<String, f64>) -> Result<Vec<Column>, CliError> {
    let o = match req.ratio_ea {
        Some(r) => OverlapSet::from_values(1.0, r)?,
        None => overlaps(
            &gaussian_jsa(
                required(req.sigma_plus, "sigma-plus")?,
                required(req.sigma_minus, "sigma-minus")?,
                0.0,
            )?,
            &[],
        )?,
    };
    let v2 = match (req.dx, req.fringe_spacing) {
        (Some(dx), Some(l)) => v2_from_geometry(&MisalignmentGeometry::from_fringe_spacing(dx, l))?,
        _ => 1.0,
    };
    let scheme = match required(req.scheme, "scheme")? {
        SchemeArg::Type1 => Scheme::TypeOne,
        SchemeArg::Type2 => Scheme::TypeTwo,
    };
    let ideal = match scheme {
        Scheme::TypeOne => type_one_visibility(&o)?,
        Scheme::TypeTwo => hom_visibility(&o)?,
    };
    extra.insert("a".into(), o.a);
    Ok(vec![
        Column::real("ratio_ea", vec![o.ratio()]),
        Column::real("visibility", vec![ideal]),
        Column::real("v2", vec![v2]),
        Column::real("visibility_misaligned", vec![misaligned_visibility(&o, v2, scheme)?]),
    ])
}

fn cases() -> Vec<Column> {
    vec![
        Column::real("g4_2x2", vec![g4_type_two(PairTimingCase::TwoByTwo)]),
        Column::real("g4_4x1", vec![g4_type_two(PairTimingCase::FourByOne)]),
        Column::real("g4_1x4", vec![g4_type_two(PairTimingCase::OneByFour)]),
    ]
}
