//! Membership checks for tensor classes. `Holds` always rests on an exact
//! certificate, `Fails` on an exactly verified counterexample; everything
//! else is `Unknown`.

use std::fmt;
use std::str::FromStr;

use num::Signed;

use crate::auxiliary::{exact_root, AuxiliarySystem};
use crate::error::{Error, Result};
use crate::falsify::{falsify, Condition, SearchOptions, SearchOutcome};
use crate::lcp::{matrix_column_adequate, DEFAULT_ADEQUACY_CAP};
use crate::numeric::{snap, to_f64, Rational};
use crate::tensor::SparseTensor;
use crate::verdict::{Certificate, Counterexample, SearchReport, Verdict, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassName {
    ColumnAdequate,
    WeakColumnAdequate,
    ColumnSufficient,
    P0,
    P,
    WeakP0,
    Psd,
    SemiPositive,
    StrictlySemiPositive,
    RowDiagonal,
}

impl ClassName {
    pub const ALL: [ClassName; 10] = [
        ClassName::ColumnAdequate,
        ClassName::WeakColumnAdequate,
        ClassName::ColumnSufficient,
        ClassName::P0,
        ClassName::P,
        ClassName::WeakP0,
        ClassName::Psd,
        ClassName::SemiPositive,
        ClassName::StrictlySemiPositive,
        ClassName::RowDiagonal,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClassName::ColumnAdequate => "column-adequate",
            ClassName::WeakColumnAdequate => "weak-column-adequate",
            ClassName::ColumnSufficient => "column-sufficient",
            ClassName::P0 => "p0",
            ClassName::P => "p",
            ClassName::WeakP0 => "weak-p0",
            ClassName::Psd => "psd",
            ClassName::SemiPositive => "semi-positive",
            ClassName::StrictlySemiPositive => "strictly-semi-positive",
            ClassName::RowDiagonal => "row-diagonal",
        }
    }
}

impl fmt::Display for ClassName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ClassName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        ClassName::ALL
            .into_iter()
            .find(|c| c.as_str() == key)
            .ok_or_else(|| Error::Unknown {
                kind: "class",
                value: s.to_string(),
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub search: SearchOptions,
    pub adequacy_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            search: SearchOptions::default(),
            adequacy_cap: DEFAULT_ADEQUACY_CAP,
        }
    }
}

pub fn check(class: ClassName, t: &SparseTensor, opts: &CheckOptions) -> Result<Verdict> {
    match class {
        ClassName::ColumnAdequate => check_column_adequate(t, opts),
        ClassName::WeakColumnAdequate => check_weak_column_adequate(t, opts),
        ClassName::ColumnSufficient => check_column_sufficient(t, opts),
        ClassName::P0 => check_p0(t, opts),
        ClassName::P => Ok(check_p(t, opts)),
        ClassName::WeakP0 => check_weak_p0(t, opts),
        ClassName::Psd => Ok(check_psd(t, opts)),
        ClassName::SemiPositive => Ok(check_semi_positive(t, false, opts)),
        ClassName::StrictlySemiPositive => Ok(check_semi_positive(t, true, opts)),
        ClassName::RowDiagonal => Ok(check_row_diagonal(t)),
    }
}

fn search(t: &SparseTensor, cond: Condition, opts: &CheckOptions, mut notes: Vec<String>) -> Verdict {
    match falsify(t, cond, &opts.search) {
        SearchOutcome::Found(c) => Verdict::Fails(c),
        SearchOutcome::NotFound(mut report) => {
            notes.append(&mut report.notes);
            report.notes = notes;
            Verdict::Unknown(report)
        }
    }
}

/// Column adequacy: certified for even order with a zero mixed block and a
/// column adequate majorization matrix; otherwise decided by search.
pub fn check_column_adequate(t: &SparseTensor, opts: &CheckOptions) -> Result<Verdict> {
    let aux = AuxiliarySystem::build_with_cap(t, 0)?;
    let mut notes = Vec::new();
    if !t.order().is_multiple_of(2) {
        notes.push("odd order: no certificate path".to_string());
    } else if !aux.b_is_zero() {
        notes.push("mixed-monomial block B is nonzero: no certificate path".to_string());
    } else {
        let (m, _) = aux.split_blocks();
        match matrix_column_adequate(&m, opts.adequacy_cap, opts.search.base_seed)? {
            Verdict::Holds(cert) => {
                return Ok(Verdict::Holds(Certificate::EvenOrderBlock {
                    order: t.order(),
                    majorization: m,
                    matrix_certificate: Box::new(cert),
                    implied_by: None,
                }))
            }
            Verdict::Fails(c) => {
                if let Some(found) = transfer_matrix_ray(t, &c) {
                    return Ok(Verdict::Fails(found));
                }
                notes.push(
                    "M(A) is not column adequate, but the violating ray has no rational root point; searching"
                        .to_string(),
                );
            }
            Verdict::Unknown(mut r) => notes.append(&mut r.notes),
        }
    }
    Ok(search(t, Condition::Adequacy, opts, notes))
}

/// With `A x^{m-1} = M(A) x^{[m-1]}` a matrix ray `z` maps to the tensor
/// point `x = z^{[1/(m-1)]}`; usable when the roots are rational (or snap to
/// a rational point that still violates).
fn transfer_matrix_ray(t: &SparseTensor, c: &Counterexample) -> Option<Counterexample> {
    let Witness::Point { x: z, .. } = &c.witness else {
        return None;
    };
    let k = (t.order() - 1) as u32;
    let exact: Option<Vec<Rational>> = z
        .iter()
        .map(|v| exact_root(&v.abs(), k).map(|r| if v.is_negative() { -r } else { r }))
        .collect();
    if let Some(x) = exact {
        if let Some(found) = Condition::Adequacy.exact_violation(t, &x) {
            return Some(found);
        }
    }
    for den in [1_000_000u64, 1000] {
        let x: Option<Vec<Rational>> = z
            .iter()
            .map(|v| snap(crate::numeric::signed_root(to_f64(v), k), den))
            .collect();
        if let Some(found) = x.and_then(|x| Condition::Adequacy.exact_violation(t, &x)) {
            return Some(found);
        }
    }
    None
}

/// Weak column adequacy coincides with column adequacy for even order; for
/// odd order only search is available.
pub fn check_weak_column_adequate(t: &SparseTensor, opts: &CheckOptions) -> Result<Verdict> {
    if t.order().is_multiple_of(2) {
        return check_column_adequate(t, opts);
    }
    Ok(search(
        t,
        Condition::WeakAdequacy,
        opts,
        vec!["odd order: no certificate path".to_string()],
    ))
}

fn inherited(v: Verdict, by: &'static str) -> Option<Verdict> {
    match v {
        Verdict::Holds(Certificate::EvenOrderBlock {
            order,
            majorization,
            matrix_certificate,
            ..
        }) => Some(Verdict::Holds(Certificate::EvenOrderBlock {
            order,
            majorization,
            matrix_certificate,
            implied_by: Some(by),
        })),
        Verdict::Holds(other) => Some(Verdict::Holds(other)),
        _ => None,
    }
}

/// Column adequate tensors are column sufficient.
pub fn check_column_sufficient(t: &SparseTensor, opts: &CheckOptions) -> Result<Verdict> {
    if let Some(v) = inherited(check_column_adequate(t, opts)?, "column adequacy") {
        return Ok(v);
    }
    Ok(search(t, Condition::Sufficiency, opts, Vec::new()))
}

/// Column adequate tensors are P0.
pub fn check_p0(t: &SparseTensor, opts: &CheckOptions) -> Result<Verdict> {
    if let Some(v) = inherited(check_column_adequate(t, opts)?, "column adequacy") {
        return Ok(v);
    }
    Ok(search(t, Condition::P0, opts, Vec::new()))
}

pub fn check_p(t: &SparseTensor, opts: &CheckOptions) -> Verdict {
    search(t, Condition::P, opts, Vec::new())
}

/// Weak column adequate tensors are weak P0.
pub fn check_weak_p0(t: &SparseTensor, opts: &CheckOptions) -> Result<Verdict> {
    if let Some(v) = inherited(check_weak_column_adequate(t, opts)?, "weak column adequacy") {
        return Ok(v);
    }
    Ok(search(t, Condition::WeakP0, opts, Vec::new()))
}

/// Positive semidefiniteness of the form `A x^m`.
pub fn check_psd(t: &SparseTensor, opts: &CheckOptions) -> Verdict {
    let form = t.form_coefficients();
    if form.is_empty() {
        return Verdict::Holds(Certificate::DecoupledForm { terms: Vec::new() });
    }
    if !t.order().is_multiple_of(2) {
        // the form is odd: A(-x)^m = -A x^m, so any nonzero value has a
        // negative twin
        if let SearchOutcome::Found(c) = falsify(t, Condition::Psd, &opts.search) {
            return Verdict::Fails(c);
        }
        return Verdict::Unknown(SearchReport::note(
            "odd order form is nonzero but no exact point with a nonzero value was found",
        ));
    }
    let decoupled = form
        .iter()
        .all(|(e, c)| e.iter().filter(|&&a| a != 0).count() == 1 && !c.is_negative());
    if decoupled {
        return Verdict::Holds(Certificate::DecoupledForm {
            terms: form.into_iter().collect(),
        });
    }
    search(
        t,
        Condition::Psd,
        opts,
        vec!["form has mixed terms: no certificate path".to_string()],
    )
}

pub fn check_semi_positive(t: &SparseTensor, strict: bool, opts: &CheckOptions) -> Verdict {
    let cond = if strict {
        Condition::StrictlySemiPositive
    } else {
        Condition::SemiPositive
    };
    search(t, cond, opts, vec!["no certificate path".to_string()])
}

pub fn check_row_diagonal(t: &SparseTensor) -> Verdict {
    match t.off_row_diagonal_entry() {
        None => Verdict::Holds(Certificate::Structural(
            "every stored entry has i2 = ... = im".to_string(),
        )),
        Some((index, value)) => Verdict::Fails(Counterexample {
            witness: Witness::Entry { index, value },
            condition: "every stored entry has i2 = ... = im".to_string(),
        }),
    }
}

/// Re-checks a `Fails` point verdict of `class` exactly; entry witnesses
/// are checked structurally.
pub fn counterexample_is_valid(class: ClassName, t: &SparseTensor, c: &Counterexample) -> bool {
    match &c.witness {
        Witness::Entry { index, value } => {
            class == ClassName::RowDiagonal && t.get(index) == *value && index[2..].iter().any(|&k| k != index[1])
        }
        Witness::Point { x, .. } => {
            let conds: &[Condition] = match class {
                ClassName::ColumnAdequate => &[Condition::Adequacy],
                ClassName::WeakColumnAdequate if t.order().is_multiple_of(2) => {
                    &[Condition::Adequacy, Condition::WeakAdequacy]
                }
                ClassName::WeakColumnAdequate => &[Condition::WeakAdequacy],
                ClassName::ColumnSufficient => &[Condition::Sufficiency],
                ClassName::P0 => &[Condition::P0],
                ClassName::P => &[Condition::P],
                ClassName::WeakP0 => &[Condition::WeakP0],
                ClassName::Psd => &[Condition::Psd],
                ClassName::SemiPositive => &[Condition::SemiPositive],
                ClassName::StrictlySemiPositive => &[Condition::StrictlySemiPositive],
                ClassName::RowDiagonal => &[],
            };
            conds.iter().any(|cond| cond.exact_violation(t, x).is_some())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ints;

    fn quick() -> CheckOptions {
        CheckOptions {
            search: SearchOptions {
                seeds: 2,
                samples: 2000,
                descents: 8,
                ..SearchOptions::default()
            },
            ..CheckOptions::default()
        }
    }

    fn t(order: usize, dim: usize, entries: &[(&[usize], i64)]) -> SparseTensor {
        SparseTensor::from_one_based(order, dim, entries).unwrap()
    }

    fn block() -> SparseTensor {
        t(
            4,
            2,
            &[
                (&[1, 1, 1, 1], 1),
                (&[2, 2, 2, 2], 1),
                (&[1, 2, 2, 2], -1),
                (&[2, 1, 1, 1], -1),
                (&[1, 1, 2, 1], 3),
                (&[1, 1, 1, 2], -2),
                (&[1, 2, 1, 1], -1),
            ],
        )
    }

    fn adequate_first() -> SparseTensor {
        t(
            4,
            2,
            &[
                (&[1, 1, 1, 1], 2),
                (&[1, 1, 1, 2], 1),
                (&[2, 1, 2, 2], 4),
                (&[2, 2, 2, 2], 2),
            ],
        )
    }

    #[test]
    fn parse_class_names() {
        for c in ClassName::ALL {
            assert_eq!(c.as_str().parse::<ClassName>().unwrap(), c);
        }
        assert_eq!(
            "Column_Adequate".parse::<ClassName>().unwrap(),
            ClassName::ColumnAdequate
        );
        assert!("copositive".parse::<ClassName>().is_err());
    }

    #[test]
    fn adequacy_verdicts() {
        let v = check_column_adequate(&block(), &quick()).unwrap();
        assert!(matches!(
            v,
            Verdict::Holds(Certificate::EvenOrderBlock { order: 4, .. })
        ));

        let sufficient = t(4, 2, &[(&[1, 1, 1, 2], -2), (&[2, 1, 1, 1], 1), (&[2, 2, 2, 2], 1)]);
        let v = check_column_adequate(&sufficient, &quick()).unwrap();
        assert_eq!(v.witness_point().unwrap(), ints(&[1, 0]).as_slice());

        let identity = SparseTensor::identity(4, 3).unwrap();
        assert!(check_p0(&identity, &quick()).unwrap().is_holds());
        assert!(check_column_sufficient(&identity, &quick()).unwrap().is_holds());
    }

    #[test]
    fn reducible_failure_transfers_rational_rays() {
        // M(A) = [[0,0],[1,0]] is not adequate; the ray lifts through cube roots
        let r = t(4, 2, &[(&[2, 1, 1, 1], 1)]);
        let v = check_column_adequate(&r, &quick()).unwrap();
        let Verdict::Fails(c) = v else {
            panic!("expected failure")
        };
        assert!(counterexample_is_valid(ClassName::ColumnAdequate, &r, &c));
    }

    #[test]
    fn first_adequate_example_is_uncertified() {
        let a = adequate_first();
        let v = check_column_adequate(&a, &quick()).unwrap();
        assert!(matches!(v, Verdict::Unknown(_)));
        assert!(matches!(
            check_column_sufficient(&a, &quick()).unwrap(),
            Verdict::Unknown(_)
        ));
        let p = check_p(&a, &quick());
        assert!(counterexample_is_valid(ClassName::P, &a, p.counterexample().unwrap()));
        let psd = check_psd(&a, &quick());
        assert!(counterexample_is_valid(
            ClassName::Psd,
            &a,
            psd.counterexample().unwrap()
        ));
        // (1, -3/2) violates the form but not the P condition
        let x = vec![crate::numeric::int(1), crate::numeric::frac(-3, 2)];
        assert!(Condition::Psd.exact_violation(&a, &x).is_some());
        assert!(Condition::P.exact_violation(&a, &x).is_none());
    }

    #[test]
    fn weak_and_psd_verdicts() {
        let weak = t(3, 2, &[(&[1, 1, 1], 1)]);
        assert!(matches!(
            check_weak_column_adequate(&weak, &quick()).unwrap(),
            Verdict::Unknown(_)
        ));
        let v = check_column_adequate(&weak, &quick()).unwrap();
        assert_eq!(v.witness_point().unwrap(), ints(&[-1, 0]).as_slice());

        let psd = t(4, 2, &[(&[1, 1, 1, 1], 1), (&[1, 1, 1, 2], -1), (&[2, 1, 1, 1], 1)]);
        assert!(check_psd(&psd, &quick()).is_holds());
        assert!(check_psd(&SparseTensor::zeros(4, 3).unwrap(), &quick()).is_holds());
        let odd = t(3, 2, &[(&[1, 1, 1], 1)]);
        assert!(check_psd(&odd, &quick()).is_fails());
    }

    #[test]
    fn p0_example_stays_unknown() {
        let p0 = t(4, 2, &[(&[1, 1, 1, 1], 1), (&[1, 2, 2, 2], -1), (&[2, 2, 2, 1], 1)]);
        assert!(matches!(check_p0(&p0, &quick()).unwrap(), Verdict::Unknown(_)));
        let v = check_column_adequate(&p0, &quick()).unwrap();
        assert_eq!(v.witness_point().unwrap(), ints(&[0, 1]).as_slice());
    }

    #[test]
    fn semi_positive_and_row_diagonal() {
        let neg = t(4, 2, &[(&[1, 1, 1, 1], -1)]);
        assert_eq!(
            check_semi_positive(&neg, false, &quick()).witness_point().unwrap(),
            ints(&[1, 0]).as_slice()
        );
        assert_eq!(
            check_column_sufficient(&neg, &quick())
                .unwrap()
                .witness_point()
                .unwrap(),
            ints(&[1, 0]).as_slice()
        );
        assert!(matches!(
            check_semi_positive(&SparseTensor::identity(4, 2).unwrap(), false, &quick()),
            Verdict::Unknown(_)
        ));
        assert!(check_semi_positive(&SparseTensor::zeros(4, 2).unwrap(), true, &quick()).is_fails());
        assert!(check_row_diagonal(&SparseTensor::identity(3, 3).unwrap()).is_holds());
        let bad = t(4, 2, &[(&[1, 1, 2, 1], 3)]);
        let v = check_row_diagonal(&bad);
        assert!(counterexample_is_valid(
            ClassName::RowDiagonal,
            &bad,
            v.counterexample().unwrap()
        ));
    }
}
