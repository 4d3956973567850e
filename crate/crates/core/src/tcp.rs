//! Tensor complementarity problems `x >= 0, w = A x^{m-1} + q >= 0, x.w = 0`:
//! exact solving through the reduced LCP when the tensor allows it, Newton
//! support enumeration otherwise, and the omega-uniqueness decision.

use nalgebra::{DMatrix, DVector};
use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::auxiliary::{exact_root, truncate, AuxiliarySystem};
use crate::error::{Error, Result};
use crate::lcp::{enumerate_solutions, w_uniqueness_of, LcpInstance, SolutionPiece};
use crate::numeric::{max_abs, signed_root, snap_vec, to_f64, vec_to_f64, Rational};
use crate::tensor::SparseTensor;

/// Default largest dimension for Newton support enumeration.
pub const DEFAULT_TCP_CAP: usize = 4;
/// Agreement tolerance for float solutions and omega values.
pub const DEDUP_TOL: f64 = 1e-8;
/// Float verification tolerance.
pub const VERIFY_TOL: f64 = 1e-9;
const SNAP_DENOMINATOR: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcpInstance {
    tensor: SparseTensor,
    q: Vec<Rational>,
}

impl TcpInstance {
    pub fn new(tensor: SparseTensor, q: Vec<Rational>) -> Result<Self> {
        if q.len() != tensor.dim() {
            return Err(Error::DimensionMismatch {
                expected: tensor.dim(),
                found: q.len(),
            });
        }
        Ok(TcpInstance { tensor, q })
    }

    pub fn tensor(&self) -> &SparseTensor {
        &self.tensor
    }

    pub fn q(&self) -> &[Rational] {
        &self.q
    }

    pub fn omega(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        Ok(self
            .tensor
            .apply_deg(x)?
            .into_iter()
            .zip(&self.q)
            .map(|(a, b)| a + b)
            .collect())
    }

    pub fn omega_f64(&self, x: &[f64]) -> Vec<f64> {
        self.tensor
            .apply_deg_f64(x)
            .into_iter()
            .zip(&self.q)
            .map(|(a, b)| a + to_f64(b))
            .collect()
    }

    pub fn verify(&self, x: &[Rational]) -> bool {
        verify_tcp(&self.tensor, &self.q, x)
    }
}

/// Exact test of `x >= 0, w >= 0, x_i w_i = 0`.
pub fn verify_tcp(t: &SparseTensor, q: &[Rational], x: &[Rational]) -> bool {
    if x.len() != t.dim() || q.len() != t.dim() {
        return false;
    }
    let Ok(ax) = t.apply_deg(x) else {
        return false;
    };
    x.iter().zip(ax).zip(q).all(|((xi, a), qi)| {
        let w = a + qi;
        !xi.is_negative() && !w.is_negative() && (xi * w).is_zero()
    })
}

/// Float test with absolute tolerance `tol`.
pub fn verify_tcp_f64(t: &SparseTensor, q: &[f64], x: &[f64], tol: f64) -> bool {
    if x.len() != t.dim() || q.len() != t.dim() {
        return false;
    }
    let w: Vec<f64> = t.apply_deg_f64(x).iter().zip(q).map(|(a, b)| a + b).collect();
    tcp_residual(x, &w) <= tol
}

/// Largest violation of `x >= 0`, `w >= 0` and `x_i w_i = 0`.
pub fn tcp_residual(x: &[f64], w: &[f64]) -> f64 {
    x.iter()
        .zip(w)
        .map(|(&a, &b)| (-a).max(-b).max((a * b).abs()).max(0.0))
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TcpSolution {
    pub x: Vec<f64>,
    /// Exact coordinates when the solution is rational and verified exactly.
    pub exact: Option<Vec<Rational>>,
    pub omega: Vec<f64>,
    /// Exact omega, known for exact points and for points recovered from an
    /// exact LCP solution.
    pub omega_exact: Option<Vec<Rational>>,
    /// Largest violation in float arithmetic (0 for exact points).
    pub residual: f64,
}

impl TcpSolution {
    fn from_exact(inst: &TcpInstance, x: Vec<Rational>) -> Result<Self> {
        let omega_exact = inst.omega(&x)?;
        Ok(TcpSolution {
            x: vec_to_f64(&x),
            omega: vec_to_f64(&omega_exact),
            exact: Some(x),
            omega_exact: Some(omega_exact),
            residual: 0.0,
        })
    }

    fn from_float(inst: &TcpInstance, x: Vec<f64>) -> Self {
        let omega = inst.omega_f64(&x);
        TcpSolution {
            residual: tcp_residual(&x, &omega),
            x,
            exact: None,
            omega,
            omega_exact: None,
        }
    }

    /// Agreement of two omegas: exact when both are exact.
    pub fn same_omega(&self, other: &TcpSolution) -> bool {
        match (&self.omega_exact, &other.omega_exact) {
            (Some(a), Some(b)) => a == b,
            _ => close(&self.omega, &other.omega, DEDUP_TOL),
        }
    }
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= tol * (1.0 + x.abs().max(y.abs())))
}

/// A continuum of solutions `x = y^{[1/(m-1)]}` with `y` ranging over an
/// exact piece of the reduced LCP.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedFamily {
    pub piece: SolutionPiece,
    pub root_degree: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSolution {
    /// Vertex points of every family, mapped back to `x`.
    pub points: Vec<TcpSolution>,
    pub families: Vec<ReducedFamily>,
}

fn require_reducible(t: &SparseTensor) -> Result<AuxiliarySystem> {
    if !t.order().is_multiple_of(2) {
        return Err(Error::Hypothesis(format!(
            "the reduced LCP needs even order, got {}",
            t.order()
        )));
    }
    let aux = AuxiliarySystem::build_with_cap(t, 0)?;
    if !aux.b_is_zero() {
        return Err(Error::Hypothesis(
            "the reduced LCP needs a zero mixed-monomial block".to_string(),
        ));
    }
    Ok(aux)
}

/// Solves through `LCP(q, M(A))` with `y = x^{[m-1]}`; needs even order and a
/// zero mixed block, in which case the two solution sets correspond exactly.
pub fn solve_exact_reduced(inst: &TcpInstance, cap: usize) -> Result<ReducedSolution> {
    let aux = require_reducible(&inst.tensor)?;
    let (m, _) = aux.split_blocks();
    let lcp = LcpInstance::new(m, inst.q.clone())?;
    let pieces = enumerate_solutions(&lcp, cap)?;
    let k = inst.tensor.order() - 1;
    let mut points: Vec<TcpSolution> = Vec::new();
    for p in &pieces {
        for y in &p.vertices {
            let sol = root_solution(inst, y, &lcp.w(y), k)?;
            if !points.iter().any(|s| close(&s.x, &sol.x, DEDUP_TOL)) {
                points.push(sol);
            }
        }
    }
    sort_solutions(&mut points);
    let families = pieces
        .into_iter()
        .map(|piece| ReducedFamily { piece, root_degree: k })
        .collect();
    Ok(ReducedSolution { points, families })
}

/// `x = y^{[1/k]}` for an exact nonnegative `y` with known exact omega `w`.
fn root_solution(inst: &TcpInstance, y: &[Rational], w: &[Rational], k: usize) -> Result<TcpSolution> {
    let exact: Option<Vec<Rational>> = y.iter().map(|v| exact_root(v, k as u32)).collect();
    if let Some(x) = exact {
        return TcpSolution::from_exact(inst, x);
    }
    let x: Vec<f64> = y.iter().map(|v| signed_root(to_f64(v), k as u32)).collect();
    let mut sol = TcpSolution::from_float(inst, x);
    sol.omega = vec_to_f64(w);
    sol.omega_exact = Some(w.to_vec());
    Ok(sol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub cap: usize,
    /// Random Newton starts per support.
    pub budget: usize,
    pub seed: u64,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            cap: DEFAULT_TCP_CAP,
            budget: 40,
            seed: 0,
        }
    }
}

/// Support enumeration with multi-start damped Newton on each support
/// system. Complete only heuristically: a solution Newton never reaches is
/// silently missing.
pub fn solve_enumerate(inst: &TcpInstance, opts: EnumerateOptions) -> Result<Vec<TcpSolution>> {
    let n = inst.tensor.dim();
    if n > opts.cap {
        return Err(Error::CapExceeded {
            what: "TCP support enumeration",
            size: n,
            cap: opts.cap,
        });
    }
    let qf = vec_to_f64(&inst.q);
    let radius = start_radius(inst);
    let found: Vec<Vec<f64>> = (0u64..1 << n)
        .into_par_iter()
        .flat_map_iter(|mask| {
            let support: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let seed = opts.seed ^ mask.wrapping_mul(0x9E37_79B9_7F4A_7C15);
            support_candidates(inst, &qf, &support, opts.budget, radius, seed)
        })
        .collect();
    let mut out: Vec<TcpSolution> = Vec::new();
    for x in found {
        let sol = polish(inst, x);
        if sol.residual > VERIFY_TOL {
            continue;
        }
        match out.iter_mut().find(|s| close(&s.x, &sol.x, DEDUP_TOL)) {
            Some(existing) => {
                if existing.exact.is_none() && sol.exact.is_some() {
                    *existing = sol;
                }
            }
            None => out.push(sol),
        }
    }
    sort_solutions(&mut out);
    Ok(out)
}

fn sort_solutions(v: &mut [TcpSolution]) {
    v.sort_by(|a, b| {
        a.x.iter()
            .zip(&b.x)
            .map(|(p, q)| p.total_cmp(q))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

/// Snaps to nearby rationals and keeps the exact point when it verifies.
fn polish(inst: &TcpInstance, x: Vec<f64>) -> TcpSolution {
    if let Some(r) = snap_vec(&x, SNAP_DENOMINATOR) {
        if inst.verify(&r) {
            if let Ok(sol) = TcpSolution::from_exact(inst, r) {
                return sol;
            }
        }
    }
    TcpSolution::from_float(inst, x)
}

/// Scale for random starts: the size at which the pure diagonal terms
/// would balance `q`.
fn start_radius(inst: &TcpInstance) -> f64 {
    let k = (inst.tensor.order() - 1) as i32;
    let qmax = max_abs(&vec_to_f64(&inst.q));
    let amin = inst
        .tensor
        .entries()
        .map(|(_, v)| to_f64(v).abs())
        .fold(f64::INFINITY, f64::min);
    if !amin.is_finite() || amin == 0.0 {
        return 2.0;
    }
    (2.0 * (qmax / amin).powf(1.0 / k as f64)).max(2.0)
}

fn support_candidates(
    inst: &TcpInstance,
    qf: &[f64],
    support: &[usize],
    budget: usize,
    radius: f64,
    seed: u64,
) -> Vec<Vec<f64>> {
    let n = inst.tensor.dim();
    if support.is_empty() {
        return vec![vec![0.0; n]];
    }
    let s = support.len();
    let mut starts: Vec<Vec<f64>> = [0.1, 1.0, 10.0].iter().map(|&c| vec![c; s]).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    starts.extend((0..budget).map(|_| (0..s).map(|_| rng.gen_range(0.0..radius)).collect()));
    let mut out: Vec<Vec<f64>> = Vec::new();
    for start in starts {
        let Some(xs) = newton(inst, qf, support, start) else {
            continue;
        };
        if xs.iter().any(|&v| v < -VERIFY_TOL) {
            continue;
        }
        let mut x = vec![0.0; n];
        for (p, &i) in support.iter().enumerate() {
            x[i] = xs[p].max(0.0);
        }
        if !out.iter().any(|y| close(y, &x, DEDUP_TOL)) {
            out.push(x);
        }
    }
    out
}

/// Damped Newton on `(A x^{m-1})_S + q_S = 0` with `x = 0` off `S`, using
/// the pseudo-inverse so that singular Jacobians still give a step.
fn newton(inst: &TcpInstance, qf: &[f64], support: &[usize], start: Vec<f64>) -> Option<Vec<f64>> {
    let n = inst.tensor.dim();
    let s = support.len();
    let embed = |xs: &[f64]| {
        let mut x = vec![0.0; n];
        for (p, &i) in support.iter().enumerate() {
            x[i] = xs[p];
        }
        x
    };
    let residual = |xs: &[f64]| -> DVector<f64> {
        let ax = inst.tensor.apply_deg_f64(&embed(xs));
        DVector::from_iterator(s, support.iter().map(|&i| ax[i] + qf[i]))
    };
    let mut xs = start;
    let mut f = residual(&xs);
    for _ in 0..100 {
        let norm = f.amax();
        if norm < 1e-13 {
            return Some(xs);
        }
        let jac_full = inst.tensor.jacobian_f64(&embed(&xs));
        let jac = DMatrix::from_fn(s, s, |a, b| jac_full[support[a] * n + support[b]]);
        let pinv = jac.svd(true, true).pseudo_inverse(1e-12).ok()?;
        let step = -(pinv * &f);
        let mut t = 1.0;
        loop {
            let trial: Vec<f64> = xs.iter().zip(step.iter()).map(|(a, b)| a + t * b).collect();
            let ft = residual(&trial);
            if ft.amax() < (1.0 - 1e-4 * t) * norm {
                xs = trial;
                f = ft;
                break;
            }
            t *= 0.5;
            if t < 1e-10 {
                return None;
            }
        }
    }
    (f.amax() < 1e-10).then_some(xs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OmegaMethod {
    /// `w`-uniqueness of `LCP(q̄, Ā)`, transferred through solution lifting.
    AuxiliaryTransfer,
    /// The equivalent `LCP(q, M(A))` for even order and zero mixed block.
    RowDiagonalReduction,
    /// Comparison of the omegas of enumerated solutions.
    DirectEnumeration,
}

impl OmegaMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            OmegaMethod::AuxiliaryTransfer => "auxiliary-transfer",
            OmegaMethod::RowDiagonalReduction => "row-diagonal-reduction",
            OmegaMethod::DirectEnumeration => "direct-enumeration",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaReport {
    /// `Some(true)` certified unique, `Some(false)` refuted by the witness
    /// pair, `None` undecided.
    pub unique: Option<bool>,
    /// The problem has no solution at all.
    pub vacuous: bool,
    pub method: OmegaMethod,
    /// The certified omega, when unique and nonvacuous.
    pub certified_omega: Option<Vec<Rational>>,
    /// Distinct omegas seen.
    pub omega_values: Vec<Vec<f64>>,
    pub witness_pair: Option<(TcpSolution, TcpSolution)>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaOptions {
    pub lcp_cap: usize,
    pub enumerate: EnumerateOptions,
}

impl Default for OmegaOptions {
    fn default() -> Self {
        OmegaOptions {
            lcp_cap: crate::lcp::DEFAULT_ENUMERATION_CAP,
            enumerate: EnumerateOptions::default(),
        }
    }
}

/// Decides whether all solutions share one omega.
///
/// Every TCP solution lifts to a solution of `LCP(q̄, Ā)` whose first `n`
/// components of `w` are its omega, so a unique `w` there certifies a unique
/// omega for any order. A non-unique `w` transfers back only for even order
/// with zero mixed block; otherwise the engine falls back to enumeration,
/// which can refute uniqueness but never certify it.
pub fn omega_unique(inst: &TcpInstance, opts: OmegaOptions) -> Result<OmegaReport> {
    let t = &inst.tensor;
    let n = t.dim();
    let aux = AuxiliarySystem::build_with_cap(t, 0)?;
    let reducible = t.order().is_multiple_of(2) && aux.b_is_zero();
    let k = t.order() - 1;
    let mut notes = Vec::new();

    if aux.width() <= opts.lcp_cap {
        let lcp = aux.lcp_instance(&inst.q)?;
        let report = w_uniqueness_of(&lcp, enumerate_solutions(&lcp, opts.lcp_cap)?);
        if report.unique {
            return Ok(OmegaReport {
                unique: Some(true),
                vacuous: report.vacuous,
                method: OmegaMethod::AuxiliaryTransfer,
                certified_omega: report.w_values.first().map(|w| w[..n].to_vec()),
                omega_values: report.w_values.iter().map(|w| vec_to_f64(&w[..n])).collect(),
                witness_pair: None,
                notes,
            });
        }
        if reducible {
            let (a, b) = report.witness_pair.expect("non-unique report carries a pair");
            let pair = (
                root_solution(inst, &truncate(&a, n)[..n], &lcp.w(&a)[..n], k)?,
                root_solution(inst, &truncate(&b, n)[..n], &lcp.w(&b)[..n], k)?,
            );
            return Ok(refuted(OmegaMethod::AuxiliaryTransfer, pair, notes));
        }
        notes.push(
            "the auxiliary LCP is not w-unique and its solutions need not come from the tensor problem".to_string(),
        );
    } else if reducible && n <= opts.lcp_cap {
        let (m, _) = aux.split_blocks();
        let lcp = LcpInstance::new(m, inst.q.clone())?;
        let report = w_uniqueness_of(&lcp, enumerate_solutions(&lcp, opts.lcp_cap)?);
        if report.unique {
            return Ok(OmegaReport {
                unique: Some(true),
                vacuous: report.vacuous,
                method: OmegaMethod::RowDiagonalReduction,
                certified_omega: report.w_values.first().cloned(),
                omega_values: report.w_values.iter().map(|w| vec_to_f64(w)).collect(),
                witness_pair: None,
                notes,
            });
        }
        let (a, b) = report.witness_pair.expect("non-unique report carries a pair");
        let pair = (
            root_solution(inst, &a, &lcp.w(&a), k)?,
            root_solution(inst, &b, &lcp.w(&b), k)?,
        );
        return Ok(refuted(OmegaMethod::RowDiagonalReduction, pair, notes));
    } else {
        notes.push(format!(
            "auxiliary size {} exceeds the LCP cap {}",
            aux.width(),
            opts.lcp_cap
        ));
    }

    let solutions = match solve_enumerate(inst, opts.enumerate) {
        Ok(s) => s,
        Err(Error::CapExceeded { .. }) => {
            notes.push(format!(
                "dimension {n} exceeds the enumeration cap {}",
                opts.enumerate.cap
            ));
            return Ok(undecided(Vec::new(), notes));
        }
        Err(e) => return Err(e),
    };
    let mut omega_values: Vec<Vec<f64>> = Vec::new();
    for s in &solutions {
        if !omega_values.iter().any(|w| close(w, &s.omega, DEDUP_TOL)) {
            omega_values.push(s.omega.clone());
        }
    }
    if let Some(first) = solutions.first() {
        if let Some(other) = solutions.iter().find(|s| !first.same_omega(s)) {
            let mut r = refuted(OmegaMethod::DirectEnumeration, (first.clone(), other.clone()), notes);
            r.omega_values = omega_values;
            return Ok(r);
        }
    }
    notes.push("enumeration found no two solutions with different omega; uniqueness is not certified".to_string());
    Ok(undecided(omega_values, notes))
}

fn refuted(method: OmegaMethod, pair: (TcpSolution, TcpSolution), notes: Vec<String>) -> OmegaReport {
    OmegaReport {
        unique: Some(false),
        vacuous: false,
        method,
        certified_omega: None,
        omega_values: vec![pair.0.omega.clone(), pair.1.omega.clone()],
        witness_pair: Some(pair),
        notes,
    }
}

fn undecided(omega_values: Vec<Vec<f64>>, notes: Vec<String>) -> OmegaReport {
    OmegaReport {
        unique: None,
        vacuous: false,
        method: OmegaMethod::DirectEnumeration,
        certified_omega: None,
        omega_values,
        witness_pair: None,
        notes,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftCheck {
    pub x: Vec<f64>,
    pub lifted: Vec<f64>,
    /// Exact verification when the solution is exact, float otherwise.
    pub exact: bool,
    pub verified: bool,
}

/// Lifts every solution to `y = (x^{alpha_j})_j` and checks it against
/// `LCP(q̄, Ā)`.
pub fn check_lifting(inst: &TcpInstance, solutions: &[TcpSolution]) -> Result<Vec<LiftCheck>> {
    let aux = AuxiliarySystem::build(&inst.tensor)?;
    let lcp = aux.lcp_instance(&inst.q)?;
    solutions
        .iter()
        .map(|s| {
            Ok(match &s.exact {
                Some(x) => {
                    let y = aux.basis().lift(x)?;
                    LiftCheck {
                        x: s.x.clone(),
                        lifted: vec_to_f64(&y),
                        exact: true,
                        verified: lcp.verify(&y),
                    }
                }
                None => {
                    let y = aux.basis().lift_f64(&s.x);
                    LiftCheck {
                        x: s.x.clone(),
                        // y_j w_j = x^{alpha_j - e_j} x_j w_j, so the tolerance scales with |y|
                        verified: lcp.verify_f64(&y, VERIFY_TOL * max_abs(&y).max(1.0)),
                        lifted: y,
                        exact: false,
                    }
                }
            })
        })
        .collect()
}
