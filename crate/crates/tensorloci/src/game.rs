//! The tensor game: subtract rank-one tensors, each move dropping the rank by
//! exactly one, until nothing is left.
//!
//! Only rational moves are played. The greedy player searches depth first over
//! candidate moves and backtracks out of states it cannot finish.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{orbit_id, OrbitId};
use crate::error::{Error, Result};
use crate::exactnum::{q, Q};
use crate::linalg::Mat;
use crate::locus::{locus_membership, Strategy};
use crate::tensorcore::{basis_vector, concise_reduce, multi_indices, subtract_scaled, RankOneTensor, Tensor};
use crate::wstate::{decompose_tangential, find_tangency};

/// Seed used when the caller does not pick one.
pub const DEFAULT_SEED: u64 = 0x7e45_0a11;

/// Budget of candidate moves checked by the greedy player.
const CHECK_BUDGET: usize = 20_000;

/// Random candidates drawn per state.
const RANDOM_CANDIDATES: usize = 200;

#[derive(Clone, Debug, PartialEq)]
pub struct Move {
    pub term: RankOneTensor<Q>,
    pub lambda: Q,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GameState {
    pub current: Tensor<Q>,
    pub moves: Vec<Move>,
    pub initial_rank: usize,
    rank: usize,
}

fn rank_of(t: &Tensor<Q>) -> Result<usize> {
    if t.is_zero_tensor() {
        return Ok(0);
    }
    Ok(orbit_id(t)?.rank())
}

impl GameState {
    pub fn new(t: Tensor<Q>) -> Result<Self> {
        let rank = rank_of(&t)?;
        Ok(GameState { current: t, moves: Vec::new(), initial_rank: rank, rank })
    }

    /// Rank of the current tensor.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_over(&self) -> bool {
        self.rank == 0
    }
}

/// Plays `current − λP`, rejecting moves that do not drop the rank by one.
pub fn game_step(s: &GameState, p: &RankOneTensor<Q>, lam: &Q) -> Result<GameState> {
    if lam.is_zero() || s.is_over() {
        return Err(Error::IllegalMove);
    }
    let next = subtract_scaled(&s.current, lam, p)?;
    let rank = rank_of(&next)?;
    if rank + 1 != s.rank {
        return Err(Error::IllegalMove);
    }
    let mut moves = s.moves.clone();
    moves.push(Move { term: p.clone(), lambda: lam.clone() });
    Ok(GameState { current: next, moves, initial_rank: s.initial_rank, rank })
}

/// Replays a transcript from `t`, checking every move.
pub fn replay(t: &Tensor<Q>, moves: &[Move]) -> Result<GameState> {
    let mut s = GameState::new(t.clone())?;
    for m in moves {
        s = game_step(&s, &m.term, &m.lambda)?;
    }
    Ok(s)
}

pub fn game_play_greedy(t: &Tensor<Q>) -> Result<GameState> {
    game_play_greedy_seeded(t, DEFAULT_SEED)
}

pub fn game_play_greedy_seeded(t: &Tensor<Q>, seed: u64) -> Result<GameState> {
    let start = GameState::new(t.clone())?;
    let mut search = Search { rng: ChaCha8Rng::seed_from_u64(seed), checks: 0, stuck_at: None };
    match search.play(start, Vec::new())? {
        Some(s) => Ok(s),
        None => {
            let orbit = search.stuck_at.map_or_else(|| "unknown".to_string(), |o| o.to_string());
            Err(Error::NoRationalWitnessFound(orbit))
        }
    }
}

type Plan = Vec<Move>;

struct Search {
    rng: ChaCha8Rng,
    checks: usize,
    stuck_at: Option<OrbitId>,
}

impl Search {
    fn play(&mut self, s: GameState, plan: Plan) -> Result<Option<GameState>> {
        if s.is_over() {
            return Ok(Some(s));
        }
        let t = &s.current;
        if t.order() <= 2 {
            let (p, lam) = matrix_pivot(t)?;
            let next = game_step(&s, &p, &lam)?;
            return self.play(next, Vec::new());
        }
        let orbit = orbit_id(t)?;
        let mut tried: Vec<Tensor<Q>> = Vec::new();
        for (i, m) in plan.iter().enumerate() {
            let mut rest = plan.clone();
            rest.remove(i);
            if let Some(done) = self.attempt(&s, m, rest, &mut tried)? {
                return Ok(Some(done));
            }
        }
        if let Some(d) = tangential_plan(t, orbit) {
            for i in 0..d.len() {
                let mut rest = d.clone();
                let m = rest.remove(i);
                if let Some(done) = self.attempt(&s, &m, rest, &mut tried)? {
                    return Ok(Some(done));
                }
            }
        }
        if t.order() == 3 {
            for axis in 0..3 {
                let Some(d) = slice_span_plan(t, axis, s.rank())? else { continue };
                let mut rest = d;
                let m = rest.remove(0);
                if let Some(done) = self.attempt(&s, &m, rest, &mut tried)? {
                    return Ok(Some(done));
                }
            }
        }
        let structured = if t.order() == 3 { structured_candidates(t)? } else { Vec::new() };
        for m in &structured {
            if let Some(done) = self.attempt(&s, m, Vec::new(), &mut tried)? {
                return Ok(Some(done));
            }
        }
        let mut witnessed = Vec::new();
        for m in &structured {
            witnessed.push(m.term.clone());
        }
        for _ in 0..RANDOM_CANDIDATES {
            witnessed.push(random_rank_one(t, &mut self.rng)?);
        }
        let mut seen: Vec<RankOneTensor<Q>> = Vec::new();
        for p in witnessed {
            if self.checks >= CHECK_BUDGET {
                break;
            }
            if seen.contains(&p) {
                continue;
            }
            seen.push(p.clone());
            self.checks += 1;
            let Ok(verdict) = locus_membership(t, &p, Strategy::Specialized) else { continue };
            let Some(lam) = verdict.rational_witness() else { continue };
            let m = Move { term: p, lambda: lam.clone() };
            if let Some(done) = self.attempt(&s, &m, Vec::new(), &mut tried)? {
                return Ok(Some(done));
            }
        }
        if self.stuck_at.is_none() {
            self.stuck_at = Some(orbit);
        }
        Ok(None)
    }

    fn attempt(
        &mut self,
        s: &GameState,
        m: &Move,
        plan: Plan,
        tried: &mut Vec<Tensor<Q>>,
    ) -> Result<Option<GameState>> {
        if self.checks >= CHECK_BUDGET {
            return Ok(None);
        }
        let after = subtract_scaled(&s.current, &m.lambda, &m.term)?;
        if tried.contains(&after) {
            return Ok(None);
        }
        tried.push(after);
        self.checks += 1;
        match game_step(s, &m.term, &m.lambda) {
            Ok(next) => self.play(next, plan),
            Err(Error::IllegalMove) | Err(Error::UnsupportedShape(_)) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// First Gaussian pivot of a tensor of order ≤ 2.
fn matrix_pivot(t: &Tensor<Q>) -> Result<(RankOneTensor<Q>, Q)> {
    if t.order() == 1 {
        return Ok((RankOneTensor::new(vec![t.data().to_vec()])?, q(1)));
    }
    let m = t.as_matrix()?;
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let a = m.get(i, j);
            if !a.is_zero() {
                let row: Vec<Q> = m.row(i).iter().map(|x| x / a).collect();
                return Ok((RankOneTensor::new(vec![m.col(j), row])?, q(1)));
            }
        }
    }
    Err(Error::ZeroTensor)
}

/// The tangential decomposition through a point next to the tangency point.
fn tangential_plan(t: &Tensor<Q>, orbit: OrbitId) -> Option<Plan> {
    if !matches!(orbit, OrbitId::Orbit(5) | OrbitId::Tangential(_)) {
        return None;
    }
    let tangency = find_tangency(t).ok()?;
    let c = concise_reduce(t).ok()?;
    for shift in 0..2 {
        let factors = tangency
            .factors
            .iter()
            .zip(&c.bases)
            .map(|(f, b)| {
                let other = b.col(shift % b.cols());
                let moved: Vec<Q> = f.iter().zip(&other).map(|(x, y)| x + y).collect();
                if moved.iter().all(|x| x.is_zero()) {
                    f.clone()
                } else {
                    moved
                }
            })
            .collect();
        let Ok(p) = RankOneTensor::new(factors) else { continue };
        if let Ok(d) = decompose_tangential(t, &p) {
            return Some(d.terms.into_iter().map(|(lambda, term)| Move { term, lambda }).collect());
        }
    }
    None
}

fn sweep_values() -> Vec<Q> {
    let mut out = vec![q(0)];
    for n in 1..=6 {
        out.push(q(n));
        out.push(q(-n));
    }
    for d in 2..=4 {
        out.push(q(1) / q(d));
        out.push(q(-1) / q(d));
    }
    out
}

/// When `rank(T)` equals the rank of flattening `axis`, looks for that many
/// independent rank-one matrices in the span of the slices along `axis`, then
/// writes `T = Σ zⱼ⊗xⱼ⊗yⱼ`. One of the other two axes must have dimension 2;
/// its factor is swept over `(0,1)` and `(1,t)` for small rational `t`.
fn slice_span_plan(t: &Tensor<Q>, axis: usize, rank: usize) -> Result<Option<Plan>> {
    let shape = t.shape();
    let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
    let (m, n) = (shape[others[0]], shape[others[1]]);
    let swept = if m == 2 {
        0
    } else if n == 2 {
        1
    } else {
        return Ok(None);
    };
    let slices: Vec<Vec<Q>> =
        (0..shape[axis]).map(|i| t.slice(axis, i).map(|s| s.data().to_vec())).collect::<Result<_>>()?;
    let span = Mat::from_rows(slices.clone());
    if span.rank() != rank {
        return Ok(None);
    }
    let perp = span.nullspace();
    let free = if swept == 0 { n } else { m };
    let entry = |x: usize, y: usize| if swept == 0 { x * n + y } else { y * n + x };
    let mut xs = vec![vec![q(0), q(1)]];
    xs.extend(sweep_values().into_iter().map(|v| vec![q(1), v]));
    let mut chosen: Vec<Vec<Q>> = Vec::new();
    let mut pairs: Vec<(Vec<Q>, Vec<Q>)> = Vec::new();
    'sweep: for x in xs {
        let kernel = if perp.is_empty() {
            (0..free).map(|j| basis_vector(free, j)).collect()
        } else {
            let rows: Vec<Vec<Q>> = perp
                .iter()
                .map(|w| (0..free).map(|y| (0..2).fold(q(0), |acc, p| acc + &w[entry(p, y)] * &x[p])).collect())
                .collect();
            Mat::from_rows(rows).nullspace()
        };
        for y in kernel {
            let mut flat = vec![q(0); m * n];
            for p in 0..2 {
                for (j, yj) in y.iter().enumerate() {
                    flat[entry(p, j)] = &x[p] * yj;
                }
            }
            let mut trial = chosen.clone();
            trial.push(flat.clone());
            if Mat::from_rows(trial.clone()).rank() == trial.len() {
                chosen = trial;
                pairs.push((x.clone(), y));
                if chosen.len() == rank {
                    break 'sweep;
                }
            }
        }
    }
    if chosen.len() != rank {
        return Ok(None);
    }
    let basis = Mat::from_rows(chosen).transpose();
    let mut coords = vec![vec![q(0); shape[axis]]; rank];
    for (i, s) in slices.iter().enumerate() {
        let Some(c) = basis.solve(s) else { return Ok(None) };
        for (j, cj) in c.into_iter().enumerate() {
            coords[j][i] = cj;
        }
    }
    let mut plan = Vec::with_capacity(rank);
    for ((x, y), z) in pairs.into_iter().zip(coords) {
        let (first, second) = if swept == 0 { (x, y) } else { (y, x) };
        let mut factors = vec![Vec::new(), Vec::new(), Vec::new()];
        factors[axis] = z;
        factors[others[0]] = first;
        factors[others[1]] = second;
        let Ok(term) = RankOneTensor::new(factors) else { return Ok(None) };
        plan.push(Move { term, lambda: q(1) });
    }
    Ok(Some(plan))
}

fn small_duals(n: usize) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = (0..n).map(|i| basis_vector(n, i)).collect();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for c in [1, -1, 2] {
                if c == 1 && j < i {
                    continue;
                }
                let mut v: Vec<Q> = basis_vector(n, i);
                v[j] = q(c);
                out.push(v);
            }
        }
    }
    out
}

fn place(axis: usize, x: Vec<Q>, y: Vec<Q>, z: Vec<Q>) -> Vec<Vec<Q>> {
    match axis {
        0 => vec![x, y, z],
        1 => vec![y, x, z],
        _ => vec![y, z, x],
    }
}

/// Unit entries, then pivots of slices `T(ψ)` extended by the fiber through
/// the pivot or by a basis vector.
fn structured_candidates(t: &Tensor<Q>) -> Result<Vec<Move>> {
    let shape = t.shape().to_vec();
    let mut out = Vec::new();
    for idx in multi_indices(&shape) {
        let v = t.get(&idx);
        if !v.is_zero() {
            let factors = idx.iter().zip(&shape).map(|(&i, &n)| basis_vector(n, i)).collect();
            out.push(Move { term: RankOneTensor::new(factors)?, lambda: v.clone() });
        }
    }
    for axis in 0..3 {
        let n = shape[axis];
        for psi in small_duals(n) {
            let s = t.contract(axis, &psi)?.as_matrix()?;
            for j in 0..s.rows() {
                for k in 0..s.cols() {
                    let pivot = s.get(j, k).clone();
                    if pivot.is_zero() {
                        continue;
                    }
                    let y = s.col(k);
                    let z: Vec<Q> = s.row(j).iter().map(|x| x / &pivot).collect();
                    let fiber: Vec<Q> = (0..n)
                        .map(|i| {
                            let mut idx = vec![0; 3];
                            idx[axis] = i;
                            let others: Vec<usize> = (0..3).filter(|&a| a != axis).collect();
                            idx[others[0]] = j;
                            idx[others[1]] = k;
                            t.get(&idx).clone()
                        })
                        .collect();
                    out.push(Move {
                        term: RankOneTensor::new(place(axis, fiber, y.clone(), z.clone()))?,
                        lambda: pivot.recip(),
                    });
                    for (i, w) in psi.iter().enumerate() {
                        if !w.is_zero() {
                            out.push(Move {
                                term: RankOneTensor::new(place(axis, basis_vector(n, i), y.clone(), z.clone()))?,
                                lambda: w.recip(),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A seeded rank-one tensor with small integer coordinates in the concise span.
fn random_rank_one(t: &Tensor<Q>, rng: &mut ChaCha8Rng) -> Result<RankOneTensor<Q>> {
    let c = concise_reduce(t)?;
    let factors = c
        .bases
        .iter()
        .map(|b| loop {
            let coords: Vec<Q> = (0..b.cols()).map(|_| q(rng.gen_range(-3..=3))).collect();
            if coords.iter().any(|x| !x.is_zero()) {
                break b.mul_vec(&coords);
            }
        })
        .collect();
    RankOneTensor::new(factors)
}

impl Move {
    /// `λ·P` as a dense tensor.
    pub fn expand(&self) -> Tensor<Q> {
        self.term.expand().scale(&self.lambda)
    }
}

impl GameState {
    /// `Σ λᵢPᵢ` over the moves played so far.
    pub fn played_sum(&self) -> Tensor<Q> {
        let mut acc = Tensor::zeros(self.current.shape());
        for m in &self.moves {
            acc = acc.add(&m.expand()).expect("moves match the tensor shape");
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locus::locus_membership;
    use crate::normal_forms::{normal_form, rank_pair, w_state};

    fn e(i: usize) -> Vec<Q> {
        basis_vector(2, i)
    }

    #[test]
    fn single_rank_one() {
        let p = RankOneTensor::new(vec![e(0), e(0), e(0)]).unwrap();
        let s = GameState::new(p.expand()).unwrap();
        let s = game_step(&s, &p, &q(1)).unwrap();
        assert!(s.is_over());
        assert!(s.current.is_zero_tensor());
    }

    #[test]
    fn w_state_moves() {
        let w = w_state(3);
        let s = GameState::new(w.clone()).unwrap();
        assert_eq!(s.rank(), 3);
        let p = RankOneTensor::new(vec![e(1), e(1), e(1)]).unwrap();
        let verdict = locus_membership(&w, &p, Strategy::Specialized).unwrap();
        let lam = verdict.rational_witness().unwrap().clone();
        let next = game_step(&s, &p, &lam).unwrap();
        assert_eq!(next.rank(), 2);
        let tangency = RankOneTensor::new(vec![e(0), e(0), e(0)]).unwrap();
        for lam in [q(1), q(-1), q(2), q(1) / q(3)] {
            assert_eq!(game_step(&s, &tangency, &lam), Err(Error::IllegalMove));
        }
        assert_eq!(game_step(&s, &p, &q(0)), Err(Error::IllegalMove));
    }

    #[test]
    fn greedy_examples() {
        let id = Tensor::from_entries(&[3, 3], &[(vec![0, 0], q(1)), (vec![1, 1], q(1)), (vec![2, 2], q(1))]);
        assert_eq!(game_play_greedy(&id).unwrap().moves.len(), 3);
        for t in [w_state(3), normal_form(5)] {
            let s = game_play_greedy(&t).unwrap();
            assert_eq!(s.moves.len(), 3);
            assert_eq!(s.played_sum(), t);
        }
        let s = game_play_greedy(&normal_form(9)).unwrap();
        assert_eq!(s.moves.len(), 4);
        assert!(replay(&normal_form(9), &s.moves).unwrap().is_over());
    }

    #[test]
    fn greedy_normal_forms() {
        for n in 1..=26u8 {
            let t = normal_form(n);
            let s = game_play_greedy(&t).unwrap_or_else(|e| panic!("orbit {n}: {e}"));
            assert_eq!(s.moves.len(), rank_pair(n).1, "orbit {n}");
            assert_eq!(s.played_sum(), t, "orbit {n}");
        }
    }
}
