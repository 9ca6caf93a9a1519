//! Game families with known exact equilibria, the planted-equilibrium
//! construction, and an exact support-enumeration solver for 2-player games.

use std::fmt;
use std::str::FromStr;

use log::debug;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{GameSpec, MixedProfile, PureProfileIter};
use crate::rng;

/// Exact mixed profile.
pub type RationalProfile = Vec<Vec<BigRational>>;

/// Largest action count the support-enumeration solver accepts.
pub const SOLVER_CAP: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    MatchingPennies,
    GeneralizedRps,
    CircularMatchingPennies,
    SmallProbability,
    PaperExample,
    Planted,
    Random,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::MatchingPennies,
        Family::GeneralizedRps,
        Family::CircularMatchingPennies,
        Family::SmallProbability,
        Family::PaperExample,
        Family::Planted,
        Family::Random,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::MatchingPennies => "matching_pennies",
            Family::GeneralizedRps => "generalized_rps",
            Family::CircularMatchingPennies => "circular_matching_pennies",
            Family::SmallProbability => "small_probability",
            Family::PaperExample => "paper_example",
            Family::Planted => "planted",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == key)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub n: usize,
    pub m: usize,
    /// Atom cap multiplier for small-probability games (`x_i(a) ≤ c/m`).
    pub c: f64,
    pub seed: u64,
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            n: 2,
            m: 2,
            c: 2.0,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedGame {
    pub game: GameSpec,
    pub family: Family,
    pub params: FamilyParams,
    pub known_equilibrium: Option<MixedProfile>,
    pub exact_equilibrium: Option<RationalProfile>,
    /// Rational payoffs the float tensors were rounded from, when the
    /// construction needed them.
    pub exact_payoffs: Option<Vec<Vec<BigRational>>>,
}

impl GeneratedGame {
    /// Max regret at the known equilibrium in exact arithmetic: zero for
    /// every family that has one.
    pub fn exact_max_regret(&self) -> Option<BigRational> {
        let x = self.exact_equilibrium.as_ref()?;
        let payoffs = match &self.exact_payoffs {
            Some(p) => p.clone(),
            None => (0..self.game.num_players())
                .map(|i| self.game.payoffs(i).iter().map(|&v| exact(v)).collect())
                .collect(),
        };
        Some(exact_max_regret(self.game.action_counts(), &payoffs, x))
    }
}

fn exact(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite payoff")
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rational_to_mixed(x: &RationalProfile) -> MixedProfile {
    MixedProfile::new(
        x.iter()
            .map(|s| s.iter().map(|p| p.to_f64().unwrap()).collect())
            .collect(),
    )
    .expect("exact distributions")
}

fn uniform_rational(action_counts: &[usize]) -> RationalProfile {
    action_counts.iter().map(|&m| vec![ratio(1, m as i64); m]).collect()
}

/// Builds one member of `family`.
pub fn generate(family: Family, params: FamilyParams) -> Result<GeneratedGame> {
    let FamilyParams { n, m, c, seed } = params;
    let simple = |game: GameSpec, x: RationalProfile| -> Result<GeneratedGame> {
        let mixed = rational_to_mixed(&x);
        Ok(GeneratedGame {
            game: game.with_name(family.as_str()).with_known_equilibrium(mixed.clone())?,
            family,
            params,
            known_equilibrium: Some(mixed),
            exact_equilibrium: Some(x),
            exact_payoffs: None,
        })
    };
    match family {
        Family::MatchingPennies => simple(matching_pennies(), uniform_rational(&[2, 2])),
        Family::GeneralizedRps => {
            if m < 3 || m % 2 == 0 {
                return Err(Error::InvalidParameter(format!(
                    "generalized RPS needs odd m >= 3, got {m}"
                )));
            }
            simple(generalized_rps(m), uniform_rational(&[m, m]))
        }
        Family::CircularMatchingPennies => {
            if n < 2 || m < 2 {
                return Err(Error::InvalidParameter(format!(
                    "circular matching pennies needs n >= 2 and m >= 2, got n = {n}, m = {m}"
                )));
            }
            simple(circular_matching_pennies(n, m), uniform_rational(&vec![m; n]))
        }
        Family::SmallProbability => {
            check_nm(n, m)?;
            if !(c.is_finite() && c >= 1.0) {
                return Err(Error::InvalidParameter(format!("c must be at least 1, got {c}")));
            }
            let x = small_probability_profile(n, m, c, seed)?;
            planted_family(family, params, &x)
        }
        Family::PaperExample => {
            if m < 2 {
                return Err(Error::InvalidParameter(format!("the example family needs m >= 2, got {m}")));
            }
            let x = paper_example_profile(m);
            planted_family(family, FamilyParams { n: 2, ..params }, &x)
        }
        Family::Planted => {
            check_nm(n, m)?;
            let x = random_rational_profile(n, m, seed);
            planted_family(family, params, &x)
        }
        Family::Random => {
            check_nm(n, m)?;
            let mut r = rng::stream(seed, 0);
            let size = m.pow(n as u32);
            let payoffs = (0..n).map(|_| (0..size).map(|_| r.gen::<f64>()).collect()).collect();
            Ok(GeneratedGame {
                game: GameSpec::new(vec![m; n], payoffs)?.with_name("random"),
                family,
                params,
                known_equilibrium: None,
                exact_equilibrium: None,
                exact_payoffs: None,
            })
        }
    }
}

fn check_nm(n: usize, m: usize) -> Result<()> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("need n, m >= 1, got n = {n}, m = {m}")));
    }
    if (m as f64).powi(n as i32) > 1e8 {
        return Err(Error::InvalidParameter(format!("{m}^{n} payoff entries is too many")));
    }
    Ok(())
}

fn planted_family(family: Family, params: FamilyParams, x: &RationalProfile) -> Result<GeneratedGame> {
    let planted = planted_equilibrium_exact(x, params.seed)?;
    Ok(GeneratedGame {
        game: planted.game.with_name(family.as_str()),
        family,
        params,
        known_equilibrium: Some(rational_to_mixed(x)),
        exact_equilibrium: Some(x.clone()),
        exact_payoffs: Some(planted.exact_payoffs),
    })
}

/// Matcher (player 1) scores 1 on a match; the mismatcher gets the rest.
pub fn matching_pennies() -> GameSpec {
    GameSpec::from_fn(vec![2, 2], |p, a| {
        let matched = if a[0] == a[1] { 1.0 } else { 0.0 };
        if p == 0 {
            matched
        } else {
            1.0 - matched
        }
    })
    .expect("valid payoffs")
}

/// Cyclic rock-paper-scissors on odd `m`: action `a` beats the next
/// `(m-1)/2` actions. Shifted to constant sum 1 (win 1, tie 1/2, loss 0).
pub fn generalized_rps(m: usize) -> GameSpec {
    let half = (m - 1) / 2;
    GameSpec::from_fn(vec![m, m], |p, a| {
        let (own, other) = if p == 0 { (a[0], a[1]) } else { (a[1], a[0]) };
        let d = (other + m - own) % m;
        if d == 0 {
            0.5
        } else if d <= half {
            1.0
        } else {
            0.0
        }
    })
    .expect("valid payoffs")
}

/// Player `i` scores 1 when matching player `i+1 (mod n)`.
pub fn circular_matching_pennies(n: usize, m: usize) -> GameSpec {
    GameSpec::from_fn(vec![m; n], |p, a| if a[p] == a[(p + 1) % n] { 1.0 } else { 0.0 }).expect("valid payoffs")
}

/// Player 1 scores 1 on action 0 and 0 elsewhere; player 2 is indifferent
/// (constant 1/2). The known equilibrium has player 1 pure on action 0 and
/// player 2 uniform, so its entropy falls `log2 m` bits short of the maximum.
pub fn dominant_action_game(m: usize) -> GameSpec {
    let x = vec![
        (0..m).map(|a| if a == 0 { 1.0 } else { 0.0 }).collect(),
        vec![1.0 / m as f64; m],
    ];
    GameSpec::from_fn(vec![m, m], |p, a| match p {
        0 => f64::from(u8::from(a[0] == 0)),
        _ => 0.5,
    })
    .expect("valid payoffs")
    .with_name("dominant_action")
    .with_known_equilibrium(MixedProfile::new(x).expect("distribution"))
    .expect("matching shape")
}

/// Player 1 uniform over `m`; player 2 puts `1/√m` on the first action and
/// splits the rest evenly, i.e. `1/(m+√m)` each. For non-square `m` the first
/// coordinate is `1/√m` rounded to 60 fractional bits.
pub fn paper_example_profile(m: usize) -> RationalProfile {
    let root = (m as f64).sqrt().round() as i64;
    let first = if (root * root) as usize == m {
        ratio(1, root)
    } else {
        let scale = BigInt::one() << 60u32;
        let target =
            BigRational::from_float(1.0 / (m as f64).sqrt()).unwrap() * BigRational::from_integer(scale.clone());
        BigRational::new(target.round().to_integer(), scale)
    };
    let rest = (BigRational::one() - &first) / BigRational::from_integer(BigInt::from(m - 1));
    let mut x2 = vec![rest; m];
    x2[0] = first;
    vec![vec![ratio(1, m as i64); m], x2]
}

/// Normalized integer weights drawn from `[100, ⌊100c⌋]`, so that every atom
/// stays at most `c/m`; draws violating the cap are rejected.
pub fn small_probability_profile(n: usize, m: usize, c: f64, seed: u64) -> Result<RationalProfile> {
    let cap = BigRational::from_float(c).unwrap() / BigRational::from_integer(BigInt::from(m));
    let hi = (100.0 * c).floor() as u32;
    let mut r = rng::stream(seed, 1 << 32);
    (0..n)
        .map(|_| {
            for _ in 0..1000 {
                let w: Vec<u32> = (0..m).map(|_| r.gen_range(100..=hi)).collect();
                let total: u64 = w.iter().map(|&v| v as u64).sum();
                let x: Vec<BigRational> = w.iter().map(|&v| ratio(v as i64, total as i64)).collect();
                if x.iter().all(|p| *p <= cap) {
                    return Ok(x);
                }
            }
            Err(Error::InvalidParameter(format!(
                "no small-probability profile for m = {m}, c = {c}"
            )))
        })
        .collect()
}

/// Random supports (size 1..=m) with integer weights in `[1, 20]`.
pub fn random_rational_profile(n: usize, m: usize, seed: u64) -> RationalProfile {
    let mut r = rng::stream(seed, 2 << 32);
    (0..n)
        .map(|_| {
            let size = r.gen_range(1..=m as u32) as usize;
            let mut actions: Vec<usize> = (0..m).collect();
            for i in 0..size {
                let j = r.gen_range(i as u32..m as u32) as usize;
                actions.swap(i, j);
            }
            let mut w = vec![0i64; m];
            for &a in &actions[..size] {
                w[a] = r.gen_range(1..=20) as i64;
            }
            let total: i64 = w.iter().sum();
            w.into_iter().map(|v| ratio(v, total)).collect()
        })
        .collect()
}

/// Recovers the exact rational behind each float entry (denominator at most
/// `10^6`), insisting that each player's entries sum to exactly 1.
pub fn rationalize(x: &MixedProfile) -> Result<RationalProfile> {
    let max_den = BigInt::from(1_000_000);
    x.strategies()
        .iter()
        .enumerate()
        .map(|(player, s)| {
            let r: Vec<BigRational> = s
                .iter()
                .map(|&p| {
                    let q = best_rational(p, &max_den);
                    if (q.to_f64().unwrap() - p).abs() > 1e-15 {
                        return Err(Error::NotADistribution {
                            player,
                            reason: format!("entry {p} has no exact rational form with denominator <= 1e6"),
                        });
                    }
                    Ok(q)
                })
                .collect::<Result<_>>()?;
            let total: BigRational = r.iter().sum();
            if !total.is_one() {
                return Err(Error::NotADistribution {
                    player,
                    reason: format!("rational entries sum to {total}, not exactly 1"),
                });
            }
            Ok(r)
        })
        .collect()
}

/// Closest fraction with denominator at most `max_den` (continued fractions).
fn best_rational(x: f64, max_den: &BigInt) -> BigRational {
    let target = BigRational::from_float(x).unwrap();
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    let mut rest = target.clone();
    loop {
        let a = rest.floor().to_integer();
        let q2 = &q0 + &a * &q1;
        if &q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = &rest - BigRational::from_integer(a);
        if frac.is_zero() {
            break;
        }
        rest = frac.recip();
    }
    BigRational::new(p1, q1)
}

#[derive(Clone, Debug)]
pub struct PlantedGame {
    pub game: GameSpec,
    pub exact_payoffs: Vec<Vec<BigRational>>,
}

/// A game in which `x` (exact rationals) is an exact equilibrium.
///
/// For each player, raw payoffs `r ∈ [0, 1/2]` are drawn on a grid of
/// `2^-21`. On-support rows become `1/2 + (r − E_{x_{-i}} r)/2`, which makes
/// every on-support action earn exactly 1/2 against `x_{-i}`; off-support
/// rows are the constant 1/5. All payoffs lie in `[1/5, 3/4]`.
pub fn planted_equilibrium(x: &MixedProfile, seed: u64) -> Result<PlantedGame> {
    planted_equilibrium_exact(&rationalize(x)?, seed)
}

pub fn planted_equilibrium_exact(x: &RationalProfile, seed: u64) -> Result<PlantedGame> {
    for (player, s) in x.iter().enumerate() {
        if s.is_empty() || s.iter().any(|p| p.is_negative()) || !s.iter().sum::<BigRational>().is_one() {
            return Err(Error::NotADistribution {
                player,
                reason: "not an exact rational distribution".into(),
            });
        }
    }
    let action_counts: Vec<usize> = x.iter().map(Vec::len).collect();
    let n = action_counts.len();
    let size: usize = action_counts.iter().product();
    let profiles: Vec<Vec<usize>> = PureProfileIter::new(&action_counts).collect();
    let off_support = ratio(1, 5);
    let grid = BigInt::one() << 21u32;

    let mut exact_payoffs = Vec::with_capacity(n);
    for i in 0..n {
        // Common denominator of the opponent weight products.
        let den: BigInt = x
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, s)| s.iter().fold(BigInt::one(), |acc, p| acc.lcm(p.denom())))
            .product();
        let mut r = rng::stream(seed, i as u64);
        let raw: Vec<i64> = (0..size).map(|_| r.gen_range(0..=(1u32 << 20)) as i64).collect();

        // Integer weights W(a_{-i}) = D·Π_{j≠i} x_j(a_j); E = Σ W·R / (D·2^21).
        let mut weighted_sum = vec![BigInt::zero(); action_counts[i]];
        let mut weights = Vec::with_capacity(size);
        for (flat, a) in profiles.iter().enumerate() {
            let w: BigRational = a
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, &aj)| x[j][aj].clone())
                .product();
            let w = w * BigRational::from_integer(den.clone());
            debug_assert!(w.is_integer());
            let w = w.to_integer();
            weighted_sum[a[i]] += &w * raw[flat];
            weights.push(w);
        }
        let out_den: BigInt = &den * &grid * 2;
        let tensor: Vec<BigRational> = profiles
            .iter()
            .enumerate()
            .map(|(flat, a)| {
                if x[i][a[i]].is_zero() {
                    return off_support.clone();
                }
                let num = &den * &grid + &den * raw[flat] - &weighted_sum[a[i]];
                BigRational::new(num, out_den.clone())
            })
            .collect();
        exact_payoffs.push(tensor);
    }
    let payoffs = exact_payoffs
        .iter()
        .map(|t| t.iter().map(|v| v.to_f64().unwrap()).collect())
        .collect();
    let game = GameSpec::new(action_counts, payoffs)?
        .with_name("planted")
        .with_known_equilibrium(rational_to_mixed(x))?;
    Ok(PlantedGame { game, exact_payoffs })
}

/// `max_i (max_a u_i(a, x_{-i}) − u_i(x))` in exact arithmetic over all pure
/// profiles.
pub fn exact_max_regret(action_counts: &[usize], payoffs: &[Vec<BigRational>], x: &RationalProfile) -> BigRational {
    let n = action_counts.len();
    let mut best: Option<BigRational> = None;
    for i in 0..n {
        let mut dev = vec![BigRational::zero(); action_counts[i]];
        let mut value = BigRational::zero();
        for (flat, a) in PureProfileIter::new(action_counts).enumerate() {
            let w_others: BigRational = (0..n).filter(|&j| j != i).map(|j| x[j][a[j]].clone()).product();
            if w_others.is_zero() {
                continue;
            }
            let term = &w_others * &payoffs[i][flat];
            value += &term * &x[i][a[i]];
            dev[a[i]] += term;
        }
        let top = dev.into_iter().max().unwrap();
        let regret = top - value;
        best = Some(match best {
            Some(b) if b >= regret => b,
            _ => regret,
        });
    }
    best.unwrap()
}

enum Solution {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined,
}

/// Row reduction of `rows` (each `unknowns + 1` long, last entry the RHS).
fn solve_linear(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Solution {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..unknowns {
        let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, r);
        let p = rows[pivot_row][col].clone();
        for v in rows[pivot_row].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let (src, dst) = if r < pivot_row {
                    let (a, b) = rows.split_at_mut(pivot_row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[pivot_row], &mut b[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = &*d - &f * s;
                }
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|row| !row[unknowns].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < unknowns {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..unknowns).map(|c| rows[c][unknowns].clone()).collect())
}

/// Mixes `strategy` (over `support`) against `payoff[row][col]`: the
/// opponent's strategy over `opp_support` makes every row in `support`
/// earn the same value. Returns (strategy, value).
fn indifference(payoff: &dyn Fn(usize, usize) -> BigRational, support: &[usize], opp_support: &[usize]) -> Solution {
    // unknowns: opponent probabilities over opp_support, then the value
    let u = opp_support.len() + 1;
    let mut rows = Vec::with_capacity(support.len() + 1);
    for &a in support {
        let mut row: Vec<BigRational> = opp_support.iter().map(|&b| payoff(a, b)).collect();
        row.push(-BigRational::one());
        row.push(BigRational::zero());
        rows.push(row);
    }
    let mut sum_row = vec![BigRational::one(); opp_support.len()];
    sum_row.push(BigRational::zero());
    sum_row.push(BigRational::one());
    rows.push(sum_row);
    solve_linear(rows, u)
}

fn subsets(m: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << m))
        .map(|mask| (0..m).filter(|&a| mask & (1 << a) != 0).collect())
        .collect()
}

/// Every equilibrium found by enumerating support pairs and solving the
/// indifference conditions exactly. Singular systems are skipped.
pub fn solve_two_player(game: &GameSpec) -> Result<Vec<RationalProfile>> {
    if game.num_players() != 2 {
        return Err(Error::NotTwoPlayer(game.num_players()));
    }
    let (m1, m2) = (game.num_actions(0), game.num_actions(1));
    if m1 > SOLVER_CAP || m2 > SOLVER_CAP {
        return Err(Error::SolverCap(game.action_counts().to_vec()));
    }
    let a: Vec<Vec<BigRational>> = (0..m1)
        .map(|i| (0..m2).map(|j| exact(game.payoffs(0)[i * m2 + j])).collect())
        .collect();
    let b: Vec<Vec<BigRational>> = (0..m1)
        .map(|i| (0..m2).map(|j| exact(game.payoffs(1)[i * m2 + j])).collect())
        .collect();
    let row_payoff = |i: usize, j: usize| a[i][j].clone();
    let col_payoff = |j: usize, i: usize| b[i][j].clone();

    let mut found: Vec<RationalProfile> = Vec::new();
    for s1 in subsets(m1) {
        for s2 in subsets(m2) {
            let (y, v) = match indifference(&row_payoff, &s1, &s2) {
                Solution::Unique(mut sol) => {
                    let v = sol.pop().unwrap();
                    (sol, v)
                }
                Solution::Inconsistent => continue,
                Solution::Underdetermined => {
                    debug!("singular system for row support {s1:?}, column support {s2:?}; skipped");
                    continue;
                }
            };
            let (x, w) = match indifference(&col_payoff, &s2, &s1) {
                Solution::Unique(mut sol) => {
                    let w = sol.pop().unwrap();
                    (sol, w)
                }
                Solution::Inconsistent => continue,
                Solution::Underdetermined => {
                    debug!("singular system for column support {s2:?}, row support {s1:?}; skipped");
                    continue;
                }
            };
            if y.iter().chain(&x).any(|p| !p.is_positive()) {
                continue;
            }
            let mut full_x = vec![BigRational::zero(); m1];
            for (&i, p) in s1.iter().zip(x) {
                full_x[i] = p;
            }
            let mut full_y = vec![BigRational::zero(); m2];
            for (&j, p) in s2.iter().zip(y) {
                full_y[j] = p;
            }
            let row_ok = (0..m1).all(|i| {
                let e: BigRational = (0..m2).map(|j| &a[i][j] * &full_y[j]).sum();
                e <= v
            });
            let col_ok = (0..m2).all(|j| {
                let e: BigRational = (0..m1).map(|i| &b[i][j] * &full_x[i]).sum();
                e <= w
            });
            let profile = vec![full_x, full_y];
            if row_ok && col_ok && !found.contains(&profile) {
                found.push(profile);
            }
        }
    }
    Ok(found)
}
