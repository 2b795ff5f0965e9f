use macx::building::{
    enumerate_building_sets, two_truncated_cube_certificate, BuildingSet, CubeCertificate,
};
use macx::canon::are_isomorphic;
use macx::nerve::{nerve_of_nestohedron, nerve_via_truncations};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let all = enumerate_building_sets(5).unwrap();
    let conn: Vec<_> = all.into_iter().filter(|b| b.is_connected()).collect();
    println!("enumerate ground 5: {} connected in {:?}", conn.len(), t0.elapsed());

    let simplex = BuildingSet::simplex(5).unwrap();
    let stride = 1;
    let t1 = Instant::now();
    let mut flags = 0usize;
    let mut bad = 0usize;
    for b in conn.iter().step_by(stride) {
        let nested = nerve_of_nestohedron(b).unwrap();
        let trunc = nerve_via_truncations(&simplex, b).unwrap();
        if !are_isomorphic(&nested.complex, &trunc.complex) {
            bad += 1;
        }
        let flag = nested.complex.flag_witness().is_none();
        if flag {
            flags += 1;
        }
        match two_truncated_cube_certificate(b, 1 << 20) {
            Ok(cert) => {
                if matches!(cert, CubeCertificate::Chain { .. }) != flag {
                    bad += 1;
                }
            }
            Err(e) => {
                bad += 1;
                let sets: Vec<String> = b.sets().iter().map(|s| format!("{s}")).collect();
                if bad <= 4 {
                    println!("ERR {}: {e}", sets.join(" "));
                }
            }
        }
    }
    let n = conn.len().div_ceil(stride);
    let per = t1.elapsed() / n as u32;
    println!(
        "sampled {n}: {} flag, {bad} bad, {:?} elapsed, {per:?}/set, full sweep ≈ {:?}",
        flags,
        t1.elapsed(),
        per * conn.len() as u32
    );
}
