//! Quick consistency checks on the table normal forms.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tensorloci::classify::{classify, OrbitId};
use tensorloci::game::{game_play_greedy, replay};
use tensorloci::linalg::Mat;
use tensorloci::locus::{closed_form_predicate, locus_membership, LocusStatus, Strategy};
use tensorloci::normal_forms::{normal_form, normal_form_shape, rank_pair, w_state};
use tensorloci::tensorcore::{apply_gl, subtract_scaled, RankOneTensor, Tensor};
use tensorloci::wstate::{decompose_tangential, find_tangency, verify_decomposition};
use tensorloci::exactnum::q;
use tensorloci::Q;

const SEED: u64 = 17;
const SAMPLES: usize = 12;

const CLOSED_FORM_ORBITS: [u8; 13] = [9, 13, 15, 16, 17, 19, 20, 21, 22, 23, 24, 25, 26];

fn small_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<Q> {
    loop {
        let v: Vec<Q> = (0..n).map(|_| q(rng.gen_range(-3..=3))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn random_rank_one(rng: &mut ChaCha8Rng, shape: &[usize]) -> RankOneTensor<Q> {
    RankOneTensor::new(shape.iter().map(|&n| small_vec(rng, n)).collect()).expect("nonzero factors")
}

fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Mat<Q> {
    loop {
        let m = Mat::from_rows((0..n).map(|_| (0..n).map(|_| q(rng.gen_range(-2..=2))).collect()).collect());
        if m.rank() == n {
            return m;
        }
    }
}

fn check(name: &str, pass: bool) -> Value {
    json!({ "name": name, "pass": pass })
}

fn table_check(n: u8) -> bool {
    let (br, r) = rank_pair(n);
    classify(&normal_form(n)).map(|c| c.orbit == OrbitId::Orbit(n) && c.rank == r && c.border_rank == br).unwrap_or(false)
}

fn game_check(n: u8) -> bool {
    let t = normal_form(n);
    match game_play_greedy(&t) {
        Ok(s) => s.moves.len() == rank_pair(n).1 && replay(&t, &s.moves).map(|e| e.is_over()).unwrap_or(false),
        Err(_) => false,
    }
}

fn gl_check(n: u8, rng: &mut ChaCha8Rng) -> bool {
    let t = normal_form(n);
    (0..3).all(|_| {
        let mats: Vec<Mat<Q>> = t.shape().iter().map(|&d| random_invertible(rng, d)).collect();
        apply_gl(&t, &mats).and_then(|g| classify(&g)).map(|c| c.orbit == OrbitId::Orbit(n)).unwrap_or(false)
    })
}

fn witness_holds(t: &Tensor<Q>, p: &RankOneTensor<Q>, lam: &Q) -> bool {
    let r = classify(t).map(|c| c.rank).unwrap_or(0);
    match subtract_scaled(t, lam, p) {
        Ok(d) if d.is_zero_tensor() => r == 1,
        Ok(d) => classify(&d).map(|c| c.rank + 1 == r).unwrap_or(false),
        Err(_) => false,
    }
}

/// Specialized and generic verdicts agree (and with the closed form where one
/// exists); rational witnesses really drop the rank.
fn locus_check(n: u8, rng: &mut ChaCha8Rng) -> bool {
    let t = normal_form(n);
    let shape = normal_form_shape(n);
    (0..SAMPLES).all(|_| {
        let p = random_rank_one(rng, &shape);
        let (Ok(s), Ok(g)) =
            (locus_membership(&t, &p, Strategy::Specialized), locus_membership(&t, &p, Strategy::Generic))
        else {
            return false;
        };
        if s.status != g.status {
            return false;
        }
        if CLOSED_FORM_ORBITS.contains(&n) {
            match closed_form_predicate(OrbitId::Orbit(n), &p) {
                Ok(forbidden) if forbidden == (s.status == LocusStatus::Forbidden) => {}
                _ => return false,
            }
        }
        s.rational_witness().map_or(true, |lam| witness_holds(&t, &p, lam))
    })
}

fn tangential_checks(rng: &mut ChaCha8Rng) -> Vec<Value> {
    let mut out = Vec::new();
    for (name, t) in [("w_state", w_state(3)), ("table_form", normal_form(5))] {
        let forbidden = find_tangency(&t)
            .and_then(|q0| locus_membership(&t, &q0.rank_one(), Strategy::Specialized))
            .map(|v| v.is_forbidden())
            .unwrap_or(false);
        out.push(check(&format!("tangency_point_forbidden_{name}"), forbidden));
        let tangency = find_tangency(&t).map(|q0| q0.rank_one().expand()).ok();
        let decomposed = (0..SAMPLES).all(|_| {
            let p = random_rank_one(rng, &[2, 2, 2]);
            if tangency.as_ref().is_some_and(|q0| {
                let (_, a) = p.normalized();
                a.expand() == *q0
            }) {
                return true;
            }
            decompose_tangential(&t, &p).map(|d| d.len() == 3 && verify_decomposition(&t, &d)).unwrap_or(false)
        });
        out.push(check(&format!("tangential_decompositions_{name}"), decomposed));
    }
    out
}

/// Runs every check for the given orbits; the flag is true when all pass.
pub fn run(orbits: &[u8]) -> (bool, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut all = true;
    let mut reports = Vec::new();
    for &n in orbits {
        let mut checks = vec![
            check("table_row", table_check(n)),
            check("game", game_check(n)),
            check("gl_invariance", gl_check(n, &mut rng)),
            check("locus_agreement", locus_check(n, &mut rng)),
        ];
        if n == 5 {
            checks.extend(tangential_checks(&mut rng));
        }
        let pass = checks.iter().all(|c| c["pass"] == json!(true));
        all &= pass;
        reports.push(json!({ "orbit": n, "pass": pass, "checks": checks }));
    }
    (all, json!({ "pass": all, "orbits": reports }))
}
