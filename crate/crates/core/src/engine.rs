//! The main loop: balance, simplify, test regularity, reduce or evaluate,
//! and assemble `ζ_top(s) = 1 + Σ contributions`.

use crate::euler::{euler_characteristic, EulerContext, EulerError, OracleMode, StratumRecord, TorusSystem};
use crate::exact::{format_rational, Rational, RationalFunction};
use crate::laurent::LaurentPoly;
use crate::lie::{LieError, NilpotentLieAlgebra};
use crate::polyhedra::lattice::{unit, IVec};
use crate::polyhedra::Cone;
use crate::repdatum::{
    balance, candidate_inits, construct_datum, monomial_multiple_split, reduce_split, regularity, simplify, weight, BalancedPiece, ReductionFailure,
    ReprDatum,
};
use crate::topo_eval::{integrate_cone, EvalError, MinFactor, RaySums};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct EngineConfig {
    pub depth_bound: usize,
    pub oracle: OracleMode,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub trace: bool,
    /// Skip pieces whose cell is too small to contribute before testing regularity.
    pub prune_low_dimensional: bool,
    /// Try evaluating every piece directly, without simplification; falls
    /// back to the general loop as soon as a piece is irregular.
    pub fast_path: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { depth_bound: 16, oracle: OracleMode::Off, jobs: 0, trace: false, prune_low_dimensional: true, fast_path: false }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("reduction failed on a piece of dimension {cell_dim} at depth {depth}: {failure}; witness {witness:?}; sets {sets:?}; rays {rays:?}")]
    Reduction {
        failure: ReductionFailure,
        cell_dim: usize,
        depth: usize,
        rays: Vec<IVec>,
        witness: Vec<String>,
        sets: Vec<Vec<String>>,
    },
    #[error(transparent)]
    Euler(#[from] EulerError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Start { name: Option<String>, n: usize, sets: Vec<Vec<String>>, factors: usize, weight: usize },
    Simplified { depth: usize, cell_rays: Vec<IVec> },
    Pruned { depth: usize, cell_dim: usize, face_dim: usize },
    Reduced { depth: usize, cell_rays: Vec<IVec>, witness: Vec<String> },
    Evaluated { depth: usize, cell_rays: Vec<IVec>, face_dim: usize, strata: Vec<(Vec<String>, i64)>, contribution: String },
    Stratum(StratumRecord),
}

#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub zeta: RationalFunction,
    pub omega: Rational,
    pub weight: usize,
    pub piece_count: usize,
    pub reduction_count: usize,
    pub strata: Vec<StratumRecord>,
    pub trace: Option<Vec<TraceEvent>>,
}

#[derive(Default)]
struct Outcome {
    items: Vec<ReprDatum>,
    sums: RaySums,
    events: Vec<TraceEvent>,
    evaluated: usize,
    reductions: usize,
    irregular: bool,
}

struct Run<'a> {
    cfg: &'a EngineConfig,
    ctx: EulerContext,
    fast: bool,
}

pub fn topological_rep_zeta(l: &NilpotentLieAlgebra, cfg: &EngineConfig) -> Result<ZetaResult, EngineError> {
    l.validate()?;
    if l.is_abelian() {
        return Ok(ZetaResult {
            zeta: RationalFunction::one(),
            omega: Rational::zero(),
            weight: 0,
            piece_count: 0,
            reduction_count: 0,
            strata: vec![],
            trace: cfg.trace.then(Vec::new),
        });
    }
    let datum = construct_datum(l)?;
    let run = || zeta_of_datum(&datum, l.name.clone(), cfg);
    if cfg.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().expect("thread pool");
        pool.install(run)
    } else {
        run()
    }
}

pub fn zeta_of_datum(datum: &ReprDatum, name: Option<String>, cfg: &EngineConfig) -> Result<ZetaResult, EngineError> {
    if cfg.fast_path {
        if let Some(r) = run_loop(datum, name.clone(), cfg, true)? {
            return Ok(r);
        }
    }
    Ok(run_loop(datum, name, cfg, false)?.expect("general loop always completes"))
}

fn run_loop(datum: &ReprDatum, name: Option<String>, cfg: &EngineConfig, fast: bool) -> Result<Option<ZetaResult>, EngineError> {
    let run = Run { cfg, ctx: EulerContext::new(cfg.oracle), fast };
    let w = weight(datum);
    let mut events = vec![];
    if cfg.trace {
        events.push(TraceEvent::Start {
            name,
            n: datum.n,
            sets: datum.sets.iter().map(|s| s.iter().map(|f| f.to_string()).collect()).collect(),
            factors: datum.factors.len(),
            weight: w,
        });
    }
    let mut items: Vec<ReprDatum> = datum.region.iter().map(|c| datum.with_region(c.clone())).collect();
    let mut total = RaySums::default();
    let (mut pieces, mut reductions) = (0, 0);
    while !items.is_empty() {
        items.sort_by_key(|d| d.depth);
        let results: Vec<Result<Outcome, EngineError>> = items.par_iter().map(|it| run.process(it)).collect();
        items = vec![];
        for r in results {
            let o = r?;
            if o.irregular {
                return Ok(None);
            }
            items.extend(o.items);
            total.merge(&o.sums, &BigInt::from(1));
            events.extend(o.events);
            pieces += o.evaluated;
            reductions += o.reductions;
        }
    }
    let zeta = &RationalFunction::one() + &total.to_rational_function();
    let omega = omega_invariant(&zeta).map_err(EngineError::Internal)?;
    let strata = run.ctx.strata();
    if cfg.trace {
        events.extend(strata.iter().cloned().map(TraceEvent::Stratum));
    }
    Ok(Some(ZetaResult {
        zeta,
        omega,
        weight: w,
        piece_count: pieces,
        reduction_count: reductions,
        strata,
        trace: cfg.trace.then_some(events),
    }))
}

impl Run<'_> {
    fn process(&self, item: &ReprDatum) -> Result<Outcome, EngineError> {
        let mut out = Outcome::default();
        for (sub, piece) in balance(item) {
            let n = sub.n;
            let c = piece.cell.dim();
            let rays = || piece.cell.closure().rays().to_vec();
            if c + 1 + piece.face_dim > n {
                return Err(EngineError::Internal(format!(
                    "cell of dimension {c} with face dimension {} in {n} variables",
                    piece.face_dim
                )));
            }
            let small = c + 1 + piece.face_dim < n;
            if small && self.cfg.prune_low_dimensional {
                if self.cfg.trace {
                    out.events.push(TraceEvent::Pruned { depth: sub.depth, cell_dim: c, face_dim: piece.face_dim });
                }
                continue;
            }
            let simplified = if self.fast { None } else { simplify(&sub, &piece) };
            if let Some(s) = simplified {
                if self.cfg.trace {
                    out.events.push(TraceEvent::Simplified { depth: sub.depth, cell_rays: rays() });
                }
                out.items.extend(s);
                continue;
            }
            let cands = candidate_inits(&piece);
            let reg = regularity(&cands, piece.face_dim, &self.ctx.ideals);
            if let Some(w) = &reg.witness {
                if self.fast {
                    out.irregular = true;
                    return Ok(out);
                }
                if let Some(parts) = monomial_multiple_split(&sub, &piece) {
                    out.items.extend(parts);
                    continue;
                }
                let parts = reduce_split(&sub, &piece, &cands, w, self.cfg.depth_bound).map_err(|failure| {
                    EngineError::Reduction {
                        failure,
                        cell_dim: c,
                        depth: sub.depth,
                        rays: rays(),
                        witness: w.iter().map(|&i| cands[i].to_string()).collect(),
                        sets: sub.sets.iter().map(|s| s.iter().map(|f| f.to_string()).collect()).collect(),
                    }
                })?;
                if self.cfg.trace {
                    out.events.push(TraceEvent::Reduced {
                        depth: sub.depth,
                        cell_rays: rays(),
                        witness: w.iter().map(|&i| cands[i].to_string()).collect(),
                    });
                }
                out.reductions += 1;
                out.items.extend(parts);
                continue;
            }
            if small {
                continue;
            }
            let (sums, strata) = self.evaluate(&sub, &piece, &cands, &reg.compressed, &reg.nonempty)?;
            if self.cfg.trace {
                out.events.push(TraceEvent::Evaluated {
                    depth: sub.depth,
                    cell_rays: rays(),
                    face_dim: piece.face_dim,
                    strata,
                    contribution: sums.to_rational_function().to_string(),
                });
            }
            out.evaluated += 1;
            out.sums.merge(&sums, &BigInt::from(1));
        }
        Ok(out)
    }

    fn evaluate(
        &self,
        d: &ReprDatum,
        piece: &BalancedPiece,
        cands: &[LaurentPoly],
        compressed: &[LaurentPoly],
        nonempty: &[Vec<usize>],
    ) -> Result<(RaySums, Vec<(Vec<String>, i64)>), EngineError> {
        let n = d.n;
        let dim = piece.face_dim;
        let mut sums = RaySums::default();
        let mut strata = vec![];
        let mut chi_total = 0i64;
        // index of each member's initial form among the candidates
        let member_cand: Vec<Vec<Option<usize>>> = piece
            .inits
            .iter()
            .map(|set| {
                set.iter()
                    .map(|f| if f.is_monomial() { None } else { cands.iter().position(|c| *c == f.monomial_normalize().0) })
                    .collect()
            })
            .collect();
        for g in nonempty {
            let sys = TorusSystem {
                dim,
                vanishing: g.iter().map(|&i| compressed[i].clone()).collect(),
                nonvanishing: (0..compressed.len()).filter(|i| !g.contains(i)).map(|i| compressed[i].clone()).collect(),
            };
            let chi = euler_characteristic(&sys, &self.ctx)?;
            chi_total += chi;
            if self.cfg.trace {
                strata.push((g.iter().map(|&i| cands[i].to_string()).collect(), chi));
            }
            if chi == 0 {
                continue;
            }
            let big_n = n + 1 + g.len();
            let mut gens: Vec<IVec> = piece
                .cell
                .closure()
                .rays()
                .iter()
                .map(|r| {
                    let mut v = r.clone();
                    v.resize(big_n, 0);
                    v
                })
                .collect();
            for k in n..big_n {
                gens.push(unit(big_n, k));
            }
            let h = Cone::from_generators(big_n, &gens, &[]);
            let lift = |set: usize, member: usize, e: i64| -> IVec {
                let mut v = piece.vertices[set][member].clone();
                v.resize(big_n, 0);
                v[n] = e;
                if let Some(ci) = member_cand[set][member] {
                    if let Some(pos) = g.iter().position(|&x| x == ci) {
                        v[n + 1 + pos] = 1;
                    }
                }
                v
            };
            let mut factors = vec![];
            for f in &d.factors {
                let mut points = vec![];
                if let Some(s) = f.s_set {
                    points.extend((0..d.sets[s].len()).map(|m| lift(s, m, 0)));
                }
                if let Some(t) = f.t_set {
                    points.extend((0..d.sets[t].len()).map(|m| lift(t, m, 1)));
                }
                factors.push(MinFactor { a: f.a, b: f.b, points });
            }
            let r = integrate_cone(&h, &factors)?;
            sums.merge(&r, &BigInt::from(chi));
        }
        let expected = if dim == 0 { 1 } else { 0 };
        if chi_total != expected {
            return Err(EngineError::Internal(format!("Euler characteristics of strata sum to {chi_total}, expected {expected}")));
        }
        Ok((sums, strata))
    }
}

/// `lim_{s→∞} s (z(s) - 1)`.
pub fn omega_invariant(z: &RationalFunction) -> Result<Rational, String> {
    let w = z - &RationalFunction::one();
    if w.is_zero() {
        return Ok(Rational::zero());
    }
    match w.degree() {
        Some(d) if d <= -1 => {
            let sw = &w * &RationalFunction::s();
            Ok(sw.limit_at_infinity().unwrap_or_else(Rational::zero))
        }
        _ => Err(format!("{z} - 1 does not vanish at infinity")),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub hard: Vec<Check>,
    pub soft: Vec<Check>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.hard.iter().all(|c| c.ok)
    }
}

/// Hard checks: degree zero, limit 1 at infinity, rational poles bounded by the
/// derived dimension. Soft: numerator vanishes at 0 and `ω > 0`.
pub fn check_invariants(z: &RationalFunction, derived_dim: usize) -> InvariantReport {
    let deg = z.degree();
    let limit = z.limit_at_infinity();
    let poles = z.poles();
    let bound = Rational::from_integer(BigInt::from(derived_dim));
    let poles_ok = match &poles {
        Some(ps) => ps.iter().all(|(r, _)| *r <= bound),
        None => false,
    };
    let omega = omega_invariant(z);
    InvariantReport {
        hard: vec![
            Check { name: "degree_zero", ok: deg == Some(0), detail: deg.map_or("zero function".into(), |d| d.to_string()) },
            Check {
                name: "limit_one",
                ok: limit.as_ref().is_some_and(|l| *l == Rational::from_integer(BigInt::from(1))),
                detail: limit.map(|l| format_rational(&l)).unwrap_or_else(|| "none".into()),
            },
            Check { name: "poles_rational_bounded", ok: poles_ok, detail: pole_text(&poles, derived_dim) },
        ],
        soft: vec![
            Check {
                name: "vanishes_at_zero",
                ok: z.eval(&Rational::zero()).is_some_and(|v| v.is_zero()),
                detail: String::new(),
            },
            Check {
                name: "omega_positive",
                ok: omega.as_ref().is_ok_and(|o| o.is_positive()),
                detail: match &omega {
                    Ok(o) => format_rational(o),
                    Err(e) => e.clone(),
                },
            },
        ],
    }
}

fn pole_text(poles: &Option<Vec<(Rational, u32)>>, bound: usize) -> String {
    match poles {
        None => "irrational poles".into(),
        Some(ps) if ps.is_empty() => "no poles".into(),
        Some(ps) => {
            let list: Vec<String> = ps
                .iter()
                .map(|(r, m)| if *m == 1 { format_rational(r) } else { format!("{} (order {m})", format_rational(r)) })
                .collect();
            format!("{} <= {bound}", list.join(", "))
        }
    }
}

/// `ζ(L1 ⊕ L2) = ζ(L1) ζ(L2)`.
pub fn product_law_check(l1: &NilpotentLieAlgebra, l2: &NilpotentLieAlgebra, cfg: &EngineConfig) -> Result<bool, EngineError> {
    let a = topological_rep_zeta(l1, cfg)?.zeta;
    let b = topological_rep_zeta(l2, cfg)?.zeta;
    let c = topological_rep_zeta(&l1.direct_sum(l2), cfg)?.zeta;
    Ok(&a * &b == c)
}
