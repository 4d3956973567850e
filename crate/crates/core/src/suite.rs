//! The worked-example corpus and a regression runner that recomputes every
//! expected value with the engines.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::auxiliary::{pad_rhs, AuxiliarySystem};
use crate::classes::{check, counterexample_is_valid, ClassName};
use crate::config::RunConfig;
use crate::error::Result;
use crate::falsify::Condition;
use crate::io::parse_tensor;
use crate::lcp::{enumerate_solutions, SolutionPiece};
use crate::linalg::Matrix;
use crate::monomial::{grlex_compare, lex_compare, mglo_compare, MonomialBasis, MultiIndex};
use crate::numeric::{format_vec, frac, int, ints, Rational};
use crate::tcp::{check_lifting, omega_unique, solve_enumerate, TcpInstance};
use crate::tensor::{componentwise_pow, SparseTensor};
use crate::verdict::{Certificate, Verdict};

pub struct ExampleCase {
    pub id: &'static str,
    pub description: &'static str,
    /// Fixture text, when the case is about a tensor.
    pub fixture: Option<&'static str>,
    run: fn(&Option<SparseTensor>, &RunConfig, &mut Checker) -> Result<()>,
}

impl ExampleCase {
    pub fn tensor(&self) -> Result<Option<SparseTensor>> {
        self.fixture.map(parse_tensor).transpose()
    }
}

#[derive(Default)]
struct Checker {
    checks: usize,
    mismatches: Vec<String>,
}

impl Checker {
    fn expect(&mut self, ok: bool, what: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.mismatches.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        let ok = got == want;
        self.expect(ok, format!("{what}: got {got:?}, expected {want:?}"));
    }
}

#[derive(Clone, Debug)]
pub struct CaseResult {
    pub id: &'static str,
    pub description: &'static str,
    pub checks: usize,
    pub mismatches: Vec<String>,
    pub elapsed: Duration,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub cases: Vec<CaseResult>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let mark = if c.passed() { "ok  " } else { "FAIL" };
            out.push_str(&format!(
                "{mark} {:<28} {:>3} checks {:>9.2} ms  {}\n",
                c.id,
                c.checks,
                c.elapsed.as_secs_f64() * 1e3,
                c.description
            ));
            for m in &c.mismatches {
                out.push_str(&format!("     mismatch: {m}\n"));
            }
        }
        let passed = self.cases.iter().filter(|c| c.passed()).count();
        out.push_str(&format!(
            "{passed}/{} cases passed in {:.2} s\n",
            self.cases.len(),
            self.elapsed.as_secs_f64()
        ));
        out
    }
}

pub fn cases() -> Vec<ExampleCase> {
    vec![
        ExampleCase {
            id: "monomial-orders",
            description: "lex, grlex and mglo comparisons and arrangements",
            fixture: None,
            run: monomial_orders,
        },
        ExampleCase {
            id: "principal-subtensors",
            description: "sub-tensors of an order-3 tensor in three variables",
            fixture: Some(include_str!("../fixtures/subtensor_3x3.tns")),
            run: principal_subtensors,
        },
        ExampleCase {
            id: "row-diagonal",
            description: "row-diagonal tensor equals M(A) I_m",
            fixture: Some(include_str!("../fixtures/row_diagonal.tns")),
            run: row_diagonal,
        },
        ExampleCase {
            id: "majorization",
            description: "majorization matrix [[1,-1],[0,2]]",
            fixture: Some(include_str!("../fixtures/majorization.tns")),
            run: majorization,
        },
        ExampleCase {
            id: "adequate-coupled",
            description: "coupled column adequate tensor, neither P nor PSD",
            fixture: Some(include_str!("../fixtures/adequate_coupled.tns")),
            run: adequate_coupled,
        },
        ExampleCase {
            id: "adequate-psd",
            description: "nonsymmetric PSD column adequate tensor",
            fixture: Some(include_str!("../fixtures/adequate_psd.tns")),
            run: adequate_psd,
        },
        ExampleCase {
            id: "sufficient-not-adequate",
            description: "column sufficient tensor failing adequacy at x = (1, 0)",
            fixture: Some(include_str!("../fixtures/sufficient_not_adequate.tns")),
            run: sufficient_not_adequate,
        },
        ExampleCase {
            id: "p0-not-adequate",
            description: "P0 and PSD tensor failing adequacy at x = (0, k)",
            fixture: Some(include_str!("../fixtures/p0_not_adequate.tns")),
            run: p0_not_adequate,
        },
        ExampleCase {
            id: "weak-adequate",
            description: "weak column adequate tensor failing adequacy at x = (-1, 0)",
            fixture: Some(include_str!("../fixtures/weak_adequate.tns")),
            run: weak_adequate,
        },
        ExampleCase {
            id: "auxiliary-cubic",
            description: "auxiliary LCP of x -> (x1^2, x2^2) with q = (0, -1)",
            fixture: Some(include_str!("../fixtures/tcp_cubic.tns")),
            run: auxiliary_cubic,
        },
        ExampleCase {
            id: "auxiliary-quartic",
            description: "auxiliary LCP of a quartic tensor with q = (0, -1)",
            fixture: Some(include_str!("../fixtures/tcp_quartic.tns")),
            run: auxiliary_quartic,
        },
        ExampleCase {
            id: "omega-quadrants",
            description: "w-uniqueness of the auxiliary LCP in all four sign quadrants",
            fixture: Some(include_str!("../fixtures/tcp_cubic.tns")),
            run: omega_quadrants,
        },
        ExampleCase {
            id: "block-adequate",
            description: "zero mixed block with column adequate M(A)",
            fixture: Some(include_str!("../fixtures/block_adequate.tns")),
            run: block_adequate,
        },
        ExampleCase {
            id: "omega-non-unique",
            description: "two solutions with different omega for q = (1, -1)",
            fixture: Some(include_str!("../fixtures/sufficient_not_adequate.tns")),
            run: omega_non_unique,
        },
    ]
}

pub fn run_example_suite(cfg: &RunConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut results = Vec::new();
    for case in cases() {
        let t0 = Instant::now();
        let tensor = case.tensor()?;
        let mut ck = Checker::default();
        if let Err(e) = (case.run)(&tensor, cfg, &mut ck) {
            ck.mismatches.push(format!("engine error: {e}"));
        }
        results.push(CaseResult {
            id: case.id,
            description: case.description,
            checks: ck.checks,
            mismatches: ck.mismatches,
            elapsed: t0.elapsed(),
        });
    }
    Ok(SuiteReport {
        cases: results,
        elapsed: start.elapsed(),
    })
}

fn tensor(t: &Option<SparseTensor>) -> &SparseTensor {
    t.as_ref().expect("case has a fixture")
}

fn mi(e: &[u32]) -> MultiIndex {
    MultiIndex::new(e.to_vec())
}

fn monomial_orders(_: &Option<SparseTensor>, _: &RunConfig, ck: &mut Checker) -> Result<()> {
    ck.eq(
        lex_compare(&mi(&[1, 2, 0]), &mi(&[0, 3, 4]))?,
        Ordering::Greater,
        "lex (1,2,0) vs (0,3,4)",
    );
    ck.eq(
        lex_compare(&mi(&[3, 2, 4]), &mi(&[3, 2, 1]))?,
        Ordering::Greater,
        "lex (3,2,4) vs (3,2,1)",
    );
    for i in 0..3 {
        ck.eq(
            lex_compare(&MultiIndex::pure_power(4, i, 1), &MultiIndex::pure_power(4, i + 1, 1))?,
            Ordering::Greater,
            "lex x_i vs x_{i+1}",
        );
    }
    ck.eq(
        grlex_compare(&mi(&[1, 2, 3]), &mi(&[3, 2, 0]))?,
        Ordering::Greater,
        "grlex (1,2,3) vs (3,2,0)",
    );
    ck.eq(
        grlex_compare(&mi(&[1, 2, 4]), &mi(&[1, 1, 5]))?,
        Ordering::Greater,
        "grlex (1,2,4) vs (1,1,5)",
    );
    ck.eq(
        mglo_compare(&mi(&[2, 0, 0]), &mi(&[0, 2, 0]))?,
        Ordering::Greater,
        "mglo (2,0,0) vs (0,2,0)",
    );
    ck.eq(
        mglo_compare(&mi(&[2, 0, 0]), &mi(&[2, 1, 0]))?,
        Ordering::Greater,
        "mglo (2,0,0) vs (2,1,0)",
    );
    ck.eq(
        grlex_compare(&mi(&[2, 1, 0]), &mi(&[2, 0, 0]))?,
        Ordering::Greater,
        "grlex (2,1,0) vs (2,0,0)",
    );
    ck.eq(
        mglo_compare(&mi(&[2, 2, 0]), &mi(&[2, 1, 1]))?,
        Ordering::Greater,
        "mglo (2,2,0) vs (2,1,1)",
    );

    let quad = [[2, 0, 0], [0, 2, 0], [0, 0, 2], [1, 1, 0], [0, 1, 1], [1, 0, 1]];
    let sorted = |cmp: fn(&MultiIndex, &MultiIndex) -> Result<Ordering>| {
        let mut v: Vec<MultiIndex> = quad.iter().map(|e| mi(e)).collect();
        v.sort_by(|a, b| cmp(b, a).expect("same length"));
        v.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(" > ")
    };
    ck.eq(
        sorted(grlex_compare),
        "x1^2 > x1*x2 > x1*x3 > x2^2 > x2*x3 > x3^2".to_string(),
        "grlex arrangement",
    );
    ck.eq(
        sorted(mglo_compare),
        "x1^2 > x2^2 > x3^2 > x1*x2 > x1*x3 > x2*x3".to_string(),
        "mglo arrangement",
    );
    ck.eq(
        MonomialBasis::new(3, 3)?.headers().join(" "),
        "x1^2 x2^2 x3^2 x1*x2 x1*x3 x2*x3".to_string(),
        "basis headers",
    );
    ck.eq(
        MonomialBasis::new(4, 2)?.headers().join(" "),
        "x1^3 x2^3 x1^2*x2 x1*x2^2".to_string(),
        "quartic basis headers",
    );
    Ok(())
}

fn principal_subtensors(t: &Option<SparseTensor>, _: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let single: Vec<Rational> = (0..3)
        .map(|j| t.principal_subtensor(&[j]).map(|s| s.get(&[0, 0, 0])))
        .collect::<Result<_>>()?;
    ck.eq(single, ints(&[2, -1, 2]), "one-dimensional sub-tensors");
    let s12 = t.principal_subtensor(&[0, 1])?;
    ck.eq(
        s12,
        SparseTensor::from_one_based(3, 2, &[(&[1, 1, 1], 2), (&[2, 2, 2], -1)])?,
        "sub-tensor on {1,2}",
    );
    let s23 = t.principal_subtensor(&[1, 2])?;
    ck.eq(
        s23,
        SparseTensor::from_one_based(
            3,
            2,
            &[
                (&[1, 1, 1], -1),
                (&[2, 2, 2], 2),
                (&[1, 1, 2], -2),
                (&[1, 2, 1], 1),
                (&[1, 2, 2], -1),
            ],
        )?,
        "sub-tensor on {2,3}",
    );
    let s13 = t.principal_subtensor(&[0, 2])?;
    ck.eq(
        s13,
        SparseTensor::from_one_based(3, 2, &[(&[1, 1, 1], 2), (&[2, 2, 2], 2)])?,
        "sub-tensor on {1,3}",
    );
    ck.eq(t.principal_subtensor(&[0, 1, 2])?, t.clone(), "full sub-tensor");
    Ok(())
}

fn sample_points(n: usize) -> Vec<Vec<Rational>> {
    let vals = [int(1), int(-2), frac(1, 3), int(0), frac(-5, 2)];
    (0..12)
        .map(|k| {
            (0..n)
                .map(|i| vals[(k * 3 + i * 2 + k / 5) % vals.len()].clone())
                .collect()
        })
        .collect()
}

fn row_diagonal(t: &Option<SparseTensor>, _: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    ck.expect(t.is_row_diagonal(), "row-diagonal structure");
    let m = t.majorization();
    ck.eq(m.clone(), Matrix::from_ints(&[&[3, -2], &[1, 1]]), "M(A)");
    for x in sample_points(2) {
        let lhs = t.apply_deg(&x)?;
        let rhs = m.mul_vec(&componentwise_pow(&x, t.order() - 1));
        ck.expect(lhs == rhs, format!("A x^3 = M(A) x^[3] at {}", format_vec(&x)));
    }
    Ok(())
}

fn majorization(t: &Option<SparseTensor>, _: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    ck.eq(t.majorization(), Matrix::from_ints(&[&[1, -1], &[0, 2]]), "M(A)");
    ck.eq(t.nnz(), 5, "stored entries after dropping the zero");
    Ok(())
}

fn fails_with_valid_witness(
    t: &SparseTensor,
    class: ClassName,
    cfg: &RunConfig,
    ck: &mut Checker,
) -> Result<Option<Vec<Rational>>> {
    let v = check(class, t, &cfg.check())?;
    match &v {
        Verdict::Fails(c) => {
            ck.expect(
                counterexample_is_valid(class, t, c),
                format!("{class} counterexample re-verifies"),
            );
            Ok(v.witness_point().map(<[Rational]>::to_vec))
        }
        other => {
            ck.expect(
                false,
                format!("{class}: expected fails, got {}", other.status().as_str()),
            );
            Ok(None)
        }
    }
}

fn not_refuted(t: &SparseTensor, class: ClassName, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let v = check(class, t, &cfg.check())?;
    ck.expect(!v.is_fails(), format!("{class}: no counterexample expected"));
    Ok(())
}

fn adequate_coupled(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    for x in sample_points(2) {
        let s = int(2) * &x[0] + &x[1];
        let want = vec![&s * &x[0] * &x[0], int(2) * &s * &x[1] * &x[1]];
        ck.expect(
            t.apply_deg(&x)? == want,
            format!("closed form of A x^3 at {}", format_vec(&x)),
        );
    }
    not_refuted(t, ClassName::ColumnAdequate, cfg, ck)?;
    fails_with_valid_witness(t, ClassName::P, cfg, ck)?;
    fails_with_valid_witness(t, ClassName::Psd, cfg, ck)?;
    let x = vec![int(1), frac(-3, 2)];
    ck.eq(t.apply_full(&x)?, frac(-23, 8), "A x^4 at (1, -3/2)");
    ck.expect(Condition::Psd.exact_violation(t, &x).is_some(), "(1, -3/2) refutes PSD");
    Ok(())
}

fn adequate_psd(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    ck.eq(
        t.form_coefficients().into_iter().collect::<Vec<_>>(),
        vec![(vec![4, 0], int(1))],
        "A x^4 = x1^4",
    );
    let v = check(ClassName::Psd, t, &cfg.check())?;
    ck.expect(
        matches!(v, Verdict::Holds(Certificate::DecoupledForm { .. })),
        "PSD certified",
    );
    not_refuted(t, ClassName::ColumnAdequate, cfg, ck)
}

fn sufficient_not_adequate(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let x = fails_with_valid_witness(t, ClassName::ColumnAdequate, cfg, ck)?;
    ck.eq(x, Some(ints(&[1, 0])), "adequacy witness");
    ck.eq(t.apply_deg(&ints(&[1, 0]))?, ints(&[0, 1]), "A x^3 at (1, 0)");
    not_refuted(t, ClassName::ColumnSufficient, cfg, ck)
}

fn p0_not_adequate(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let x = fails_with_valid_witness(t, ClassName::ColumnAdequate, cfg, ck)?;
    let on_axis = x.as_ref().is_some_and(|x| x[0] == int(0) && x[1] != int(0));
    ck.expect(on_axis, format!("adequacy witness of the form (0, k), got {x:?}"));
    for k in [1, -1, 3] {
        let xk = ints(&[0, k]);
        ck.eq(t.apply_deg(&xk)?, ints(&[-k * k * k, 0]), "A x^3 at (0, k)");
        ck.expect(
            Condition::Adequacy.exact_violation(t, &xk).is_some(),
            format!("(0, {k}) refutes adequacy"),
        );
    }
    not_refuted(t, ClassName::P0, cfg, ck)?;
    ck.expect(check(ClassName::Psd, t, &cfg.check())?.is_holds(), "PSD certified");
    Ok(())
}

fn weak_adequate(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let x = fails_with_valid_witness(t, ClassName::ColumnAdequate, cfg, ck)?;
    ck.eq(x, Some(ints(&[-1, 0])), "adequacy witness");
    not_refuted(t, ClassName::WeakColumnAdequate, cfg, ck)
}

fn tcp_points(t: &SparseTensor, q: &[Rational], cfg: &RunConfig) -> Result<Vec<Vec<Rational>>> {
    let inst = TcpInstance::new(t.clone(), q.to_vec())?;
    let sols = solve_enumerate(&inst, cfg.enumerate())?;
    Ok(sols
        .iter()
        .map(|s| s.exact.clone().unwrap_or_else(|| vec![int(-1); t.dim()]))
        .collect())
}

fn lift_checks(t: &SparseTensor, q: &[Rational], cfg: &RunConfig, ck: &mut Checker) -> Result<Vec<Vec<f64>>> {
    let inst = TcpInstance::new(t.clone(), q.to_vec())?;
    let sols = solve_enumerate(&inst, cfg.enumerate())?;
    let checks = check_lifting(&inst, &sols)?;
    ck.expect(
        checks.iter().all(|c| c.verified && c.exact),
        "every solution lifts exactly",
    );
    Ok(checks.into_iter().map(|c| c.lifted).collect())
}

fn piece_shape(p: &SolutionPiece) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    let mut v = p.vertices.clone();
    let mut r = p.rays.clone();
    v.sort();
    r.sort();
    (v, r)
}

fn auxiliary_cubic(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let aux = AuxiliarySystem::build(t)?;
    ck.eq(
        aux.coef().clone(),
        Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]]),
        "coefficient matrix",
    );
    ck.eq(
        aux.abar_dense(),
        Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
        "padded matrix",
    );
    let q = ints(&[0, -1]);
    ck.eq(pad_rhs(&q, 3)?, ints(&[0, -1, 0]), "padded q");
    ck.eq(tcp_points(t, &q, cfg)?, vec![ints(&[0, 1])], "TCP solution set");
    let pieces = enumerate_solutions(&aux.lcp_instance(&q)?, cfg.caps.lcp)?;
    ck.eq(
        pieces.iter().map(piece_shape).collect::<Vec<_>>(),
        vec![(vec![ints(&[0, 1, 0])], vec![ints(&[0, 0, 1])])],
        "LCP solutions (0, 1, y3), y3 >= 0",
    );
    let lifted = lift_checks(t, &q, cfg, ck)?;
    ck.eq(lifted, vec![vec![0.0, 1.0, 0.0]], "lift of (0, 1)");
    Ok(())
}

fn auxiliary_quartic(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let aux = AuxiliarySystem::build(t)?;
    ck.eq(
        aux.coef().clone(),
        Matrix::from_ints(&[&[1, 0, -2, 1], &[0, 1, 0, 0]]),
        "coefficient matrix",
    );
    ck.eq(
        aux.abar_dense(),
        Matrix::from_ints(&[&[1, 0, -2, 1], &[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]),
        "padded matrix",
    );
    let q = ints(&[0, -1]);
    ck.eq(pad_rhs(&q, 4)?, ints(&[0, -1, 0, 0]), "padded q");
    ck.eq(
        tcp_points(t, &q, cfg)?,
        vec![ints(&[0, 1]), ints(&[1, 1])],
        "TCP solution set",
    );
    let mut shapes: Vec<_> = enumerate_solutions(&aux.lcp_instance(&q)?, cfg.caps.lcp)?
        .iter()
        .map(piece_shape)
        .collect();
    shapes.sort();
    let mut want = vec![
        // (2 y3 - y4, 1, y3, y4) with 2 y3 >= y4 >= 0
        (
            vec![ints(&[0, 1, 0, 0])],
            vec![ints(&[0, 0, 1, 2]), ints(&[2, 0, 1, 0])],
        ),
        // (0, 1, y3, y4) with y4 >= 2 y3 >= 0
        (
            vec![ints(&[0, 1, 0, 0])],
            vec![ints(&[0, 0, 0, 1]), ints(&[0, 0, 1, 2])],
        ),
    ];
    want.sort();
    ck.eq(shapes, want, "LCP solution families");
    let lifted = lift_checks(t, &q, cfg, ck)?;
    ck.eq(
        lifted,
        vec![vec![0.0, 1.0, 0.0, 0.0], vec![1.0, 1.0, 1.0, 1.0]],
        "lifts of (0, 1) and (1, 1)",
    );
    Ok(())
}

fn omega_quadrants(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let expected = [
        ([2, 3], [2, 3]),
        ([-2, -3], [0, 0]),
        ([2, -3], [2, 0]),
        ([-2, 3], [0, 3]),
    ];
    for (q, w) in expected {
        let inst = TcpInstance::new(t.clone(), ints(&q))?;
        let r = omega_unique(&inst, cfg.omega())?;
        ck.eq(r.unique, Some(true), &format!("unique omega for q = {q:?}"));
        ck.eq(
            r.certified_omega,
            Some(ints(&w)),
            &format!("certified omega for q = {q:?}"),
        );
    }
    Ok(())
}

fn block_adequate(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let aux = AuxiliarySystem::build(t)?;
    ck.eq(
        aux.coef().clone(),
        Matrix::from_ints(&[&[1, -1, 0, 0], &[-1, 1, 0, 0]]),
        "coefficient matrix",
    );
    let (m, b) = aux.split_blocks();
    ck.eq(m, Matrix::from_ints(&[&[1, -1], &[-1, 1]]), "M(A)");
    ck.expect(b.is_zero(), "mixed block B = 0");
    let v = check(ClassName::ColumnAdequate, t, &cfg.check())?;
    ck.expect(
        matches!(v, Verdict::Holds(Certificate::EvenOrderBlock { order: 4, .. })),
        "adequacy certified through M(A)",
    );
    for q in [[1, 1], [-1, 1], [1, -1], [-2, -5]] {
        let inst = TcpInstance::new(t.clone(), ints(&q))?;
        ck.eq(
            omega_unique(&inst, cfg.omega())?.unique,
            Some(true),
            &format!("unique omega for q = {q:?}"),
        );
    }
    Ok(())
}

fn omega_non_unique(t: &Option<SparseTensor>, cfg: &RunConfig, ck: &mut Checker) -> Result<()> {
    let t = tensor(t);
    let inst = TcpInstance::new(t.clone(), ints(&[1, -1]))?;
    let r = omega_unique(&inst, cfg.omega())?;
    ck.eq(r.unique, Some(false), "omega uniqueness refuted");
    if let Some((a, b)) = r.witness_pair {
        ck.eq(a.exact, Some(ints(&[0, 1])), "first solution");
        ck.eq(a.omega_exact, Some(ints(&[1, 0])), "first omega");
        let root = 0.5f64.cbrt();
        ck.expect(
            b.x.iter().all(|v| (v - root).abs() < 1e-10),
            format!("second solution (2^(-1/3), 2^(-1/3)), got {:?}", b.x),
        );
        ck.expect(b.omega.iter().all(|v| v.abs() < 1e-10), "second omega is zero");
    } else {
        ck.expect(false, "witness pair present");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for c in cases() {
            assert!(c.tensor().is_ok(), "{}", c.id);
        }
    }

    #[test]
    fn suite_passes_and_is_deterministic() {
        let cfg = RunConfig::default();
        let a = run_example_suite(&cfg).unwrap();
        assert!(a.passed(), "{}", a.to_text());
        let b = run_example_suite(&cfg).unwrap();
        let sig = |r: &SuiteReport| {
            r.cases
                .iter()
                .map(|c| (c.id, c.checks, c.mismatches.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(sig(&a), sig(&b));
    }
}
