//! Cue-index estimation: bracketing empirical operating points between
//! the model's grid of curves.
//!
//! The model produces one curve per cue index on the grid `q = j/n`,
//! `j = 0..=n` (ROC mode: conditional hit probability; mROC mode:
//! posterior correct-recall probability). At a fixed false alarm the
//! curve values grow with `q`, so an empirical point pins its cue index
//! between the two neighbouring curves, onto a single curve when it
//! matches one within tolerance, or outside the grid entirely.
//!
//! Brackets are encoded on a half-step scale with `2n + 1` slots: even
//! slot `2j` is the grid value `j/n` itself, odd slot `2j + 1` is the
//! open interval between `j/n` and `(j+1)/n`. Intersection then reduces
//! to ordinary integer-interval intersection, and open/closed endpoints
//! survive it: a point strictly between `3/n` and `4/n` is inconsistent
//! with a point strictly between `2/n` and `3/n`, even though the closed
//! hulls of the two brackets share the endpoint `3/n`.

use num::{BigRational, One, Signed, Zero};

use crate::analytic::ExactProb;
use crate::error::{Error, Result};
use crate::network::SignumVariant;
use crate::roc::{mroc_curve, roc_curve};

/// Which family of curves a fit compares against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Roc,
    Mroc,
}

impl CurveKind {
    pub fn name(self) -> &'static str {
        match self {
            CurveKind::Roc => "roc",
            CurveKind::Mroc => "mroc",
        }
    }
}

/// Default tolerance for deciding that an empirical point lies on a grid
/// curve. Empirical data arrives as low-precision decimals, so exact
/// rational equality would never fire.
pub const DEFAULT_ON_CURVE_TOLERANCE: f64 = 1e-9;

/// An observed (false alarm, probability) pair.
#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalPoint {
    pub f: f64,
    pub p: f64,
    pub label: Option<String>,
}

impl EmpiricalPoint {
    pub fn new(f: f64, p: f64, label: Option<String>) -> Result<Self> {
        if !f.is_finite() || f <= 0.0 || f > 1.0 {
            return Err(Error::InvalidCoordinate { axis: "f", value: f });
        }
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidCoordinate { axis: "p", value: p });
        }
        Ok(Self { f, p, label })
    }
}

/// Cue-index bracket on the grid `{0, 1/n, ..., 1}`, or an open-ended
/// marker for points below the bottom curve or above the top one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QBracket {
    /// The point lies below every grid curve (worse than chance in ROC
    /// mode): any consistent cue index would be negative.
    BelowGrid,
    /// The point lies above every grid curve: any consistent cue index
    /// would exceed one.
    AboveGrid,
    /// Half-step slot interval; see the module docs for the encoding.
    Range { n: u32, lo: u32, hi: u32 },
}

impl QBracket {
    /// Degenerate bracket on the grid value `j/n`.
    pub fn at_grid(j: u32, n: u32) -> Self {
        assert!(j <= n);
        QBracket::Range { n, lo: 2 * j, hi: 2 * j }
    }

    /// Open bracket strictly between `j/n` and `(j+1)/n`.
    pub fn between(j: u32, n: u32) -> Self {
        assert!(j < n);
        QBracket::Range {
            n,
            lo: 2 * j + 1,
            hi: 2 * j + 1,
        }
    }

    /// Closed bracket spanning the grid values `j_lo/n ..= j_hi/n`.
    pub fn grid_span(j_lo: u32, j_hi: u32, n: u32) -> Self {
        assert!(j_lo <= j_hi && j_hi <= n);
        QBracket::Range {
            n,
            lo: 2 * j_lo,
            hi: 2 * j_hi,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, QBracket::Range { lo, hi, .. } if lo == hi && lo % 2 == 0)
    }

    /// Lower endpoint as `(numerator, denominator, inclusive)`, or `None`
    /// for the open-ended markers.
    pub fn lower_bound(&self) -> Option<(u32, u32, bool)> {
        match self {
            QBracket::Range { n, lo, .. } => Some((lo / 2, *n, lo % 2 == 0)),
            _ => None,
        }
    }

    /// Upper endpoint as `(numerator, denominator, inclusive)`.
    pub fn upper_bound(&self) -> Option<(u32, u32, bool)> {
        match self {
            QBracket::Range { n, hi, .. } => Some(((hi + 1) / 2, *n, hi % 2 == 0)),
            _ => None,
        }
    }

    /// Intersection of two brackets over the same grid.
    pub fn intersect(&self, other: &QBracket) -> Option<QBracket> {
        match (self, other) {
            (QBracket::BelowGrid, QBracket::BelowGrid) => Some(QBracket::BelowGrid),
            (QBracket::AboveGrid, QBracket::AboveGrid) => Some(QBracket::AboveGrid),
            (
                QBracket::Range { n, lo: a_lo, hi: a_hi },
                QBracket::Range {
                    n: other_n,
                    lo: b_lo,
                    hi: b_hi,
                },
            ) => {
                assert_eq!(n, other_n, "brackets from different grids");
                let lo = *a_lo.max(b_lo);
                let hi = *a_hi.min(b_hi);
                (lo <= hi).then_some(QBracket::Range { n: *n, lo, hi })
            }
            _ => None,
        }
    }
}

impl std::fmt::Display for QBracket {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QBracket::BelowGrid => write!(f, "q < 0"),
            QBracket::AboveGrid => write!(f, "q > 1"),
            QBracket::Range { n, lo, hi } => {
                let (open, low_j) = if lo % 2 == 0 {
                    ('[', lo / 2)
                } else {
                    ('(', (lo - 1) / 2)
                };
                let (close, high_j) = if hi % 2 == 0 {
                    (']', hi / 2)
                } else {
                    (')', (hi + 1) / 2)
                };
                write!(f, "{open}{low_j}/{n}, {high_j}/{n}{close}")
            }
        }
    }
}

/// Consensus of the per-point brackets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Consensus {
    /// Every bracket intersects: the common bracket.
    Agreed(QBracket),
    /// The brackets are inconsistent. `prefix_len` points form the
    /// maximal consistent prefix with bracket `prefix`; the remaining
    /// points intersect to `suffix` when they agree among themselves.
    Split {
        prefix_len: usize,
        prefix: QBracket,
        suffix: Option<QBracket>,
    },
}

/// Result of fitting a set of empirical points against the curve grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FitReport {
    pub n: u32,
    pub variant: SignumVariant,
    pub mode: CurveKind,
    pub tolerance: f64,
    pub brackets: Vec<QBracket>,
    pub consensus: Consensus,
}

/// The curve family used for bracketing: one value row per grid index
/// `j` (cue `j/n`, noise count `n - j`), all sharing the sweep's
/// false-alarm abscissas.
struct CurveFamily {
    false_alarms: Vec<BigRational>,
    rows: Vec<Vec<BigRational>>,
}

impl CurveFamily {
    fn build(n: u32, variant: SignumVariant, mode: CurveKind) -> Result<Self> {
        let mut false_alarms = Vec::new();
        let mut rows = Vec::with_capacity(n as usize + 1);
        for j in 0..=n {
            let m = n - j;
            let (fs, vs) = curve_values(n, m, variant, mode)?;
            if j == 0 {
                false_alarms = fs;
            } else {
                debug_assert_eq!(false_alarms, fs);
            }
            rows.push(vs);
        }
        Ok(Self { false_alarms, rows })
    }

    fn value_at(&self, j: u32, f_query: &BigRational) -> BigRational {
        interpolate(&self.false_alarms, &self.rows[j as usize], f_query)
    }
}

fn curve_values(
    n: u32,
    m: u32,
    variant: SignumVariant,
    mode: CurveKind,
) -> Result<(Vec<BigRational>, Vec<BigRational>)> {
    match mode {
        CurveKind::Roc => {
            let curve = roc_curve(n, m, variant)?;
            Ok(curve
                .points
                .into_iter()
                .map(|p| (p.false_alarm.into_ratio(), p.hit.into_ratio()))
                .unzip())
        }
        CurveKind::Mroc => {
            let curve = mroc_curve(n, m, variant)?;
            Ok(curve
                .points
                .into_iter()
                .map(|p| (p.false_alarm.into_ratio(), p.posterior.p_cr.into_ratio()))
                .unzip())
        }
    }
}

/// Piecewise-linear evaluation over the operating points. Queries below
/// the smallest false alarm extrapolate the first segment, which keeps
/// the diagonal and the flat-top curves exact everywhere in (0, 1].
fn interpolate(fs: &[BigRational], vs: &[BigRational], f_query: &BigRational) -> BigRational {
    debug_assert!(fs.len() >= 2 && fs.len() == vs.len());
    let segment = match fs.iter().position(|f| f_query <= f) {
        Some(0) | None => 0,
        Some(i) => i - 1,
    };
    let (f0, f1) = (&fs[segment], &fs[segment + 1]);
    let (v0, v1) = (&vs[segment], &vs[segment + 1]);
    if f_query == f0 {
        return v0.clone();
    }
    if f_query == f1 {
        return v1.clone();
    }
    v0 + (v1 - v0) * (f_query - f0) / (f1 - f0)
}

/// Model value (hit probability or posterior, per `mode`) of the curve
/// with noise count `m` at an arbitrary false alarm in (0, 1].
pub fn interpolate_curve(
    n: u32,
    m: u32,
    variant: SignumVariant,
    mode: CurveKind,
    f_query: &BigRational,
) -> Result<ExactProb> {
    if f_query <= &BigRational::zero() || f_query > &BigRational::one() {
        return Err(Error::QueryOutOfRange {
            query: format!("{}/{}", f_query.numer(), f_query.denom()),
        });
    }
    let (fs, vs) = curve_values(n, m, variant, mode)?;
    let value = interpolate(&fs, &vs, f_query);
    // First-segment extrapolation of a concave curve cannot undershoot
    // zero, but clamp defensively before claiming a probability.
    let clamped = value
        .max(BigRational::zero())
        .min(BigRational::one());
    ExactProb::from_ratio(clamped)
}

fn rational_from_f64(value: f64) -> BigRational {
    BigRational::from_float(value).expect("finite float")
}

fn bracket_with_family(
    family: &CurveFamily,
    point: &EmpiricalPoint,
    n: u32,
    tolerance: f64,
) -> Result<QBracket> {
    if point.f >= 1.0 {
        // Every ROC curve passes through (1, 1); nothing can be resolved
        // there, and the mROC fit keeps the same contract.
        return Err(Error::UndeterminedAtUnitFalseAlarm);
    }
    let f_query = rational_from_f64(point.f);
    let target = rational_from_f64(point.p);
    let tol = rational_from_f64(tolerance.abs());

    let values: Vec<BigRational> = (0..=n).map(|j| family.value_at(j, &f_query)).collect();
    debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));

    let matches: Vec<u32> = (0..=n)
        .filter(|&j| (&values[j as usize] - &target).abs() <= tol)
        .collect();
    if let (Some(&first), Some(&last)) = (matches.first(), matches.last()) {
        return Ok(QBracket::grid_span(first, last, n));
    }
    if target < values[0] {
        return Ok(QBracket::BelowGrid);
    }
    if target > values[n as usize] {
        return Ok(QBracket::AboveGrid);
    }
    let j = (0..n)
        .find(|&j| values[j as usize] < target && target < values[j as usize + 1])
        .expect("target is interior and matches no curve");
    Ok(QBracket::between(j, n))
}

/// Brackets a single empirical point between the model's grid curves.
pub fn bracket_point(
    point: &EmpiricalPoint,
    n: u32,
    variant: SignumVariant,
    mode: CurveKind,
    tolerance: f64,
) -> Result<QBracket> {
    let family = CurveFamily::build(n, variant, mode)?;
    bracket_with_family(&family, point, n, tolerance)
}

/// Brackets every point and intersects the results.
///
/// When the brackets are mutually inconsistent the report carries the
/// maximal consistent prefix and the intersection of the remaining
/// points, mirroring how multi-point empirical curves split into runs
/// with different cue indices.
pub fn fit_curve(
    points: &[EmpiricalPoint],
    n: u32,
    variant: SignumVariant,
    mode: CurveKind,
    tolerance: f64,
) -> Result<FitReport> {
    if points.is_empty() {
        return Err(Error::NoPoints);
    }
    let family = CurveFamily::build(n, variant, mode)?;
    let mut brackets = Vec::with_capacity(points.len());
    for (index, point) in points.iter().enumerate() {
        let bracket =
            bracket_with_family(&family, point, n, tolerance).map_err(|e| Error::PointRejected {
                index,
                reason: e.to_string(),
            })?;
        brackets.push(bracket);
    }

    let mut acc = brackets[0].clone();
    let mut prefix_len = 1;
    for bracket in &brackets[1..] {
        match acc.intersect(bracket) {
            Some(next) => {
                acc = next;
                prefix_len += 1;
            }
            None => break,
        }
    }
    let consensus = if prefix_len == brackets.len() {
        Consensus::Agreed(acc)
    } else {
        let mut suffix = Some(brackets[prefix_len].clone());
        for bracket in &brackets[prefix_len + 1..] {
            suffix = suffix.and_then(|s| s.intersect(bracket));
        }
        Consensus::Split {
            prefix_len,
            prefix: acc,
            suffix,
        }
    };

    Ok(FitReport {
        n,
        variant,
        mode,
        tolerance,
        brackets,
        consensus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::bigint::BigInt;

    const MINUS: SignumVariant = SignumVariant::MinusAtThreshold;

    fn ratio(numer: i64, denom: i64) -> BigRational {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn point(f: f64, p: f64) -> EmpiricalPoint {
        EmpiricalPoint::new(f, p, None).unwrap()
    }

    #[test]
    fn empirical_point_validation() {
        assert!(EmpiricalPoint::new(0.0, 0.5, None).is_err());
        assert!(EmpiricalPoint::new(-0.1, 0.5, None).is_err());
        assert!(EmpiricalPoint::new(1.1, 0.5, None).is_err());
        assert!(EmpiricalPoint::new(0.5, 1.5, None).is_err());
        assert!(EmpiricalPoint::new(f64::NAN, 0.5, None).is_err());
        assert!(EmpiricalPoint::new(1.0, 1.0, None).is_ok());
    }

    #[test]
    fn interpolation_is_exact_at_operating_points() {
        let curve = roc_curve(9, 7, MINUS).unwrap();
        for op in &curve.points {
            let value =
                interpolate_curve(9, 7, MINUS, CurveKind::Roc, op.false_alarm.as_ratio())
                    .unwrap();
            assert_eq!(&value, &op.hit);
        }
    }

    #[test]
    fn interpolation_on_degenerate_curves() {
        for f in [ratio(1, 1000), ratio(1, 3), ratio(7, 10), ratio(1, 1)] {
            let diag = interpolate_curve(9, 9, MINUS, CurveKind::Roc, &f).unwrap();
            assert_eq!(diag.as_ratio(), &f);
            let top = interpolate_curve(9, 0, MINUS, CurveKind::Roc, &f).unwrap();
            assert!(top.is_one());
        }
    }

    #[test]
    fn interpolation_rejects_out_of_domain_queries() {
        assert!(interpolate_curve(9, 7, MINUS, CurveKind::Roc, &ratio(0, 1)).is_err());
        assert!(interpolate_curve(9, 7, MINUS, CurveKind::Roc, &ratio(-1, 2)).is_err());
        assert!(interpolate_curve(9, 7, MINUS, CurveKind::Roc, &ratio(3, 2)).is_err());
    }

    #[test]
    fn interpolation_midpoint_between_points() {
        // Between (23/256, 29/128) and (65/256, 1/2) on the m = 7 curve.
        let f = (ratio(23, 256) + ratio(65, 256)) / ratio(2, 1);
        let value = interpolate_curve(9, 7, MINUS, CurveKind::Roc, &f).unwrap();
        let expected = (ratio(29, 128) + ratio(1, 2)) / ratio(2, 1);
        assert_eq!(value.as_ratio(), &expected);
    }

    #[test]
    fn bracket_of_a_point_on_a_grid_curve_is_degenerate() {
        let curve = roc_curve(9, 7, MINUS).unwrap();
        let op = &curve.points[4]; // theta = 0
        let pt = point(op.false_alarm.to_f64(), op.hit.to_f64());
        let bracket =
            bracket_point(&pt, 9, MINUS, CurveKind::Roc, DEFAULT_ON_CURVE_TOLERANCE).unwrap();
        assert_eq!(bracket, QBracket::at_grid(2, 9)); // q = 2/9
        assert!(bracket.is_degenerate());
    }

    #[test]
    fn bracket_of_midpoint_is_open_between_neighbours() {
        // Midway in p between the q = 2/9 and q = 3/9 curves at f = 1/2:
        // (99/128 + 114/128) / 2 = 213/256.
        let pt = point(0.5, 213.0 / 256.0);
        let bracket =
            bracket_point(&pt, 9, MINUS, CurveKind::Roc, DEFAULT_ON_CURVE_TOLERANCE).unwrap();
        assert_eq!(bracket, QBracket::between(2, 9));
        assert_eq!(bracket.to_string(), "(2/9, 3/9)");
    }

    #[test]
    fn bracket_below_diagonal_is_open_marker() {
        let pt = point(0.5, 0.3);
        let bracket =
            bracket_point(&pt, 9, MINUS, CurveKind::Roc, DEFAULT_ON_CURVE_TOLERANCE).unwrap();
        assert_eq!(bracket, QBracket::BelowGrid);
    }

    #[test]
    fn bracket_widens_over_plateau_ties() {
        // At f = 1/2 every curve with m <= 4 (q >= 5/9) sits at p = 1.
        let pt = point(0.5, 1.0);
        let bracket =
            bracket_point(&pt, 9, MINUS, CurveKind::Roc, DEFAULT_ON_CURVE_TOLERANCE).unwrap();
        assert_eq!(bracket, QBracket::grid_span(5, 9, 9));
    }

    #[test]
    fn bracket_at_unit_false_alarm_is_undetermined() {
        let pt = point(1.0, 1.0);
        assert_eq!(
            bracket_point(&pt, 9, MINUS, CurveKind::Roc, DEFAULT_ON_CURVE_TOLERANCE),
            Err(Error::UndeterminedAtUnitFalseAlarm)
        );
        assert_eq!(
            bracket_point(&pt, 9, MINUS, CurveKind::Mroc, DEFAULT_ON_CURVE_TOLERANCE),
            Err(Error::UndeterminedAtUnitFalseAlarm)
        );
    }

    #[test]
    fn brackets_are_monotone_in_p() {
        let f = 0.3;
        let mut last_lo = 0i64;
        let mut last_hi = 0i64;
        let mut first = true;
        for step in 1..20 {
            let p = f + (1.0 - f) * f64::from(step) / 20.0;
            let bracket =
                bracket_point(&point(f, p), 9, MINUS, CurveKind::Roc, 1e-9).unwrap();
            let QBracket::Range { lo, hi, .. } = bracket else {
                panic!("interior point must bracket on the grid");
            };
            if !first {
                assert!(i64::from(lo) >= last_lo);
                assert!(i64::from(hi) >= last_hi);
            }
            last_lo = i64::from(lo);
            last_hi = i64::from(hi);
            first = false;
        }
    }

    #[test]
    fn bracket_intersection_respects_open_endpoints() {
        let a = QBracket::between(3, 9); // (3/9, 4/9)
        let b = QBracket::between(2, 9); // (2/9, 3/9)
        assert_eq!(a.intersect(&b), None);
        let closed = QBracket::grid_span(2, 3, 9); // [2/9, 3/9]
        assert_eq!(closed.intersect(&b), Some(b.clone()));
        assert_eq!(
            QBracket::BelowGrid.intersect(&QBracket::BelowGrid),
            Some(QBracket::BelowGrid)
        );
        assert_eq!(QBracket::BelowGrid.intersect(&a), None);
    }

    #[test]
    fn bracket_rendering() {
        assert_eq!(QBracket::at_grid(2, 9).to_string(), "[2/9, 2/9]");
        assert_eq!(QBracket::between(3, 9).to_string(), "(3/9, 4/9)");
        assert_eq!(QBracket::grid_span(5, 9, 9).to_string(), "[5/9, 9/9]");
        assert_eq!(QBracket::BelowGrid.to_string(), "q < 0");
        assert_eq!(QBracket::AboveGrid.to_string(), "q > 1");
    }

    #[test]
    fn fit_of_points_on_one_curve_agrees_on_its_cue() {
        // Five operating points of the q = 2/9 curve, excluding (1, 1).
        let curve = roc_curve(9, 7, MINUS).unwrap();
        let points: Vec<EmpiricalPoint> = curve.points[..5]
            .iter()
            .map(|op| point(op.false_alarm.to_f64(), op.hit.to_f64()))
            .collect();
        let report = fit_curve(&points, 9, MINUS, CurveKind::Roc, 1e-9).unwrap();
        assert_eq!(report.consensus, Consensus::Agreed(QBracket::at_grid(2, 9)));
    }

    #[test]
    fn fit_of_single_point_returns_its_bracket() {
        let report = fit_curve(&[point(0.5, 213.0 / 256.0)], 9, MINUS, CurveKind::Roc, 1e-9)
            .unwrap();
        assert_eq!(
            report.consensus,
            Consensus::Agreed(QBracket::between(2, 9))
        );
    }

    #[test]
    fn fit_of_mixed_runs_splits_into_prefix_and_suffix() {
        // Three points midway between the q = 3/9 and q = 4/9 curves,
        // then two midway between q = 2/9 and q = 3/9. All coordinates
        // are exact dyadics.
        let points = vec![
            point(1.0 / 512.0, 3.0 / 128.0),
            point(5.0 / 256.0, 19.0 / 128.0),
            point(23.0 / 256.0, 27.0 / 64.0),
            point(65.0 / 256.0, 37.0 / 64.0),
            point(0.5, 213.0 / 256.0),
        ];
        let report = fit_curve(&points, 9, MINUS, CurveKind::Roc, 1e-9).unwrap();
        assert_eq!(
            report.consensus,
            Consensus::Split {
                prefix_len: 3,
                prefix: QBracket::between(3, 9),
                suffix: Some(QBracket::between(2, 9)),
            }
        );
    }

    #[test]
    fn fit_requires_points_and_rejects_unit_false_alarm_rows() {
        assert_eq!(
            fit_curve(&[], 9, MINUS, CurveKind::Roc, 1e-9),
            Err(Error::NoPoints)
        );
        let err = fit_curve(
            &[point(0.5, 0.9), point(1.0, 1.0)],
            9,
            MINUS,
            CurveKind::Roc,
            1e-9,
        )
        .unwrap_err();
        assert!(matches!(err, Error::PointRejected { index: 1, .. }));
    }

    #[test]
    fn mroc_fits_recover_the_generating_cue() {
        for n in [5u32, 9, 12] {
            for m in 1..n {
                let curve = mroc_curve(n, m, MINUS).unwrap();
                let points: Vec<EmpiricalPoint> = curve
                    .points
                    .iter()
                    .filter(|op| !op.false_alarm.is_one())
                    .map(|op| point(op.false_alarm.to_f64(), op.posterior.p_cr.to_f64()))
                    .collect();
                let report = fit_curve(&points, n, MINUS, CurveKind::Mroc, 1e-9).unwrap();
                assert_eq!(
                    report.consensus,
                    Consensus::Agreed(QBracket::at_grid(n - m, n)),
                    "n={n} m={m}"
                );
            }
        }
    }
}
