//! Walls, chambers and flip schedules along a segment.
//!
//! Only the governing coefficient `c_top` (the highest `c_i ≢ 0`) of each
//! candidate can change the lexicographic sign on an open set, so the
//! critical points are the roots of the governing coefficients. A critical
//! point is a wall when some candidate compares differently on its two sides
//! (or, at `t = 0` and `t = 1`, differently at the endpoint than just inside).
//! Critical points that are not walls but carry a different verdict (double
//! roots of `c_top`) are kept as exceptional points of their chamber.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{check_class, positive_leading, alpha_t, sign_to_ordering, wall_polynomials, SegmentError, StabilitySegment, WallPolynomials};
use crate::exact::quadratic::quadratic_root;
use crate::exact::rational::simplest_between;
use crate::exact::{isolate_common, IsolatedRoot, Polynomial, Rational, Var};
use crate::sheaf::{check_candidates, comparisons, stability_verdict, SheafClass, Verdict};

/// A candidate whose comparison changes across a wall, with the index of
/// its governing coefficient function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trigger {
    pub candidate: String,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub location: IsolatedRoot,
    pub triggering: Vec<Trigger>,
    /// The wall sits at `t = 0` or `t = 1`.
    pub endpoint: bool,
}

/// Per-candidate orderings and the verdict at a single parameter value.
/// `None` only if the point is irrational of degree above two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointReport {
    pub location: IsolatedRoot,
    pub orderings: Option<Vec<(String, Ordering)>>,
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chamber {
    /// Index of the wall bounding the chamber from below; `None` means the
    /// chamber contains `t = 0`.
    pub lower: Option<usize>,
    /// Index of the upper wall; `None` means the chamber contains `t = 1`.
    pub upper: Option<usize>,
    pub sample: Rational,
    pub orderings: Vec<(String, Ordering)>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalPoint {
    pub chamber: usize,
    pub point: PointReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberReport {
    pub walls: Vec<Wall>,
    /// `at_walls[k]` describes the parameter value of `walls[k]`.
    pub at_walls: Vec<PointReport>,
    pub chambers: Vec<Chamber>,
    pub exceptional: Vec<ExceptionalPoint>,
}

/// Where a rational `t ∈ [0, 1]` falls in a [`ChamberReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Chamber(usize),
    Wall(usize),
    Exceptional(usize),
}

impl ChamberReport {
    pub fn locate(&self, t: &Rational) -> Location {
        for (k, w) in self.walls.iter().enumerate() {
            if w.location.cmp_rational(t) == Ordering::Equal {
                return Location::Wall(k);
            }
        }
        for (k, x) in self.exceptional.iter().enumerate() {
            if x.point.location.cmp_rational(t) == Ordering::Equal {
                return Location::Exceptional(k);
            }
        }
        let below = self
            .walls
            .iter()
            .filter(|w| w.location.cmp_rational(t) == Ordering::Less)
            .count();
        // chambers alternate with walls, starting with a wall only at t = 0
        let starts_with_wall = self.chambers.first().is_some_and(|c| c.lower.is_some());
        Location::Chamber(if starts_with_wall { below - 1 } else { below })
    }

    /// Verdict the report predicts at a rational `t`.
    pub fn verdict_at(&self, t: &Rational) -> Option<&Verdict> {
        match self.locate(t) {
            Location::Chamber(k) => Some(&self.chambers[k].verdict),
            Location::Wall(k) => self.at_walls[k].verdict.as_ref(),
            Location::Exceptional(k) => self.exceptional[k].point.verdict.as_ref(),
        }
    }

    fn chamber_below(&self, wall: usize) -> Option<usize> {
        self.chambers.iter().position(|c| c.upper == Some(wall))
    }

    fn chamber_above(&self, wall: usize) -> Option<usize> {
        self.chambers.iter().position(|c| c.lower == Some(wall))
    }
}

struct Gap {
    lo: Rational,
    hi: Rational,
    sample: Rational,
    orderings: Vec<(String, Ordering)>,
}

fn orderings_differ(a: &[(String, Ordering)], b: &[(String, Ordering)], wps: &[WallPolynomials]) -> Vec<Trigger> {
    a.iter()
        .zip(b)
        .zip(wps)
        .filter(|((x, y), _)| x.1 != y.1)
        .map(|((x, _), wp)| Trigger { candidate: x.0.clone(), index: wp.governing_index().unwrap_or(0) })
        .collect()
}

fn exact_orderings(
    e: &SheafClass,
    cands: &[SheafClass],
    seg: &StabilitySegment,
    wps: &[WallPolynomials],
    t: &Rational,
) -> Result<Vec<(String, Ordering)>, SegmentError> {
    let ords = comparisons(e, cands, &seg.at(t))?;
    for ((name, ord), wp) in ords.iter().zip(wps) {
        if wp.ordering_at(t) != *ord {
            return Err(SegmentError::Internal(format!(
                "coefficient signs and reduced polynomials disagree for {name} at t = {}",
                crate::exact::format_rational(t)
            )));
        }
    }
    Ok(ords)
}

fn point_report(
    e: &SheafClass,
    cands: &[SheafClass],
    seg: &StabilitySegment,
    wps: &[WallPolynomials],
    root: &IsolatedRoot,
) -> Result<PointReport, SegmentError> {
    let orderings = match &root.exact {
        Some(r) => Some(exact_orderings(e, cands, seg, wps, r)?),
        None => quadratic_root(root).map(|x| {
            wps.iter()
                .map(|wp| (wp.candidate.clone(), sign_to_ordering(wp.sign_at_surd(&x))))
                .collect::<Vec<_>>()
        }),
    };
    let verdict = orderings
        .as_ref()
        .map(|o| Verdict::from_orderings(o.iter().map(|(n, ord)| (n.as_str(), *ord))));
    Ok(PointReport { location: root.clone(), orderings, verdict })
}

fn analyze(e: &SheafClass, cands: &[SheafClass], seg: &StabilitySegment) -> Result<(ChamberReport, Vec<WallPolynomials>), SegmentError> {
    check_class(e, seg)?;
    positive_leading(e, &alpha_t(e, seg))?;
    check_candidates(e, cands)?;
    let wps = cands
        .iter()
        .map(|f| wall_polynomials(f, e, seg))
        .collect::<Result<Vec<_>, _>>()?;
    let tops: Vec<Polynomial> = wps
        .iter()
        .filter_map(|wp| wp.governing_index().map(|i| wp.coeffs[i].clone()))
        .filter(|c| !c.is_constant())
        .collect();
    let zero = Rational::zero();
    let one = Rational::one();
    let mut critical = if tops.is_empty() { Vec::new() } else { isolate_common(&tops, &zero, &one)? };
    // keep irrational intervals off the endpoints so every gap is nonempty
    for c in critical.iter_mut().filter(|c| c.root.exact.is_none()) {
        while c.root.lo == zero || c.root.hi == one {
            c.root.bisect();
        }
    }
    let points = critical
        .iter()
        .map(|c| point_report(e, cands, seg, &wps, &c.root))
        .collect::<Result<Vec<_>, _>>()?;

    // gaps[k] lies between critical[k-1] and critical[k]
    let mut gaps: Vec<Option<Gap>> = Vec::with_capacity(critical.len() + 1);
    for k in 0..=critical.len() {
        let lo = if k == 0 { zero.clone() } else { critical[k - 1].root.hi.clone() };
        let hi = if k == critical.len() { one.clone() } else { critical[k].root.lo.clone() };
        if lo == hi {
            gaps.push(None);
            continue;
        }
        let sample = simplest_between(&lo, &hi);
        let orderings = exact_orderings(e, cands, seg, &wps, &sample)?;
        gaps.push(Some(Gap { lo, hi, sample, orderings }));
    }

    let mut walls = Vec::new();
    let mut at_walls = Vec::new();
    let mut is_wall = vec![false; critical.len()];
    for (k, point) in points.iter().enumerate() {
        let here = point.orderings.as_deref();
        let triggering = match (&gaps[k], &gaps[k + 1], here) {
            (Some(b), Some(a), _) => orderings_differ(&b.orderings, &a.orderings, &wps),
            (None, Some(a), Some(h)) | (Some(a), None, Some(h)) => orderings_differ(h, &a.orderings, &wps),
            _ => {
                return Err(SegmentError::Internal("critical point without neighbouring chamber".into()));
            }
        };
        if triggering.is_empty() {
            continue;
        }
        is_wall[k] = true;
        let endpoint = matches!(&point.location.exact, Some(r) if r.is_zero() || r.is_one());
        walls.push(Wall { location: point.location.clone(), triggering, endpoint });
        at_walls.push(point.clone());
    }

    // merge gaps across non-wall critical points
    let mut chambers = Vec::new();
    let mut exceptional = Vec::new();
    let mut wall_index = 0usize;
    let mut lower: Option<usize> = None;
    let mut members: Vec<usize> = Vec::new();
    let mut pending_points: Vec<usize> = Vec::new();
    let close = |members: &mut Vec<usize>, pending: &mut Vec<usize>, lower: Option<usize>, upper: Option<usize>, chambers: &mut Vec<Chamber>, exceptional: &mut Vec<ExceptionalPoint>| -> Result<(), SegmentError> {
        if members.is_empty() {
            return Ok(());
        }
        let widest = members
            .iter()
            .map(|&g| gaps[g].as_ref().expect("member gaps exist"))
            .max_by(|a, b| (&a.hi - &a.lo).cmp(&(&b.hi - &b.lo)))
            .expect("nonempty");
        let verdict = stability_verdict(e, cands, &seg.at(&widest.sample))?;
        let orderings = widest.orderings.clone();
        let chamber = chambers.len();
        for &p in pending.iter() {
            if points[p].orderings.as_ref() != Some(&orderings) {
                exceptional.push(ExceptionalPoint { chamber, point: points[p].clone() });
            }
        }
        chambers.push(Chamber { lower, upper, sample: widest.sample.clone(), orderings, verdict });
        members.clear();
        pending.clear();
        Ok(())
    };
    for k in 0..=critical.len() {
        if gaps[k].is_some() {
            members.push(k);
        }
        if k == critical.len() {
            break;
        }
        if is_wall[k] {
            close(&mut members, &mut pending_points, lower, Some(wall_index), &mut chambers, &mut exceptional)?;
            lower = Some(wall_index);
            wall_index += 1;
        } else {
            pending_points.push(k);
        }
    }
    close(&mut members, &mut pending_points, lower, None, &mut chambers, &mut exceptional)?;

    Ok((ChamberReport { walls, at_walls, chambers, exceptional }, wps))
}

/// Sorted, pairwise disjoint walls of `e` against `candidates` on `seg`.
pub fn find_walls(e: &SheafClass, candidates: &[SheafClass], seg: &StabilitySegment) -> Result<Vec<Wall>, SegmentError> {
    Ok(analyze(e, candidates, seg)?.0.walls)
}

/// Chambers between consecutive walls with exact verdicts at rational sample
/// points, plus exact verdicts at the walls themselves.
pub fn chamber_decomposition(
    e: &SheafClass,
    candidates: &[SheafClass],
    seg: &StabilitySegment,
) -> Result<ChamberReport, SegmentError> {
    Ok(analyze(e, candidates, seg)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateFlip {
    pub candidate: String,
    pub before: Option<Ordering>,
    pub at: Option<Ordering>,
    pub after: Option<Ordering>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flip {
    pub wall: Wall,
    pub before: Option<Verdict>,
    /// `None` only for an irrational wall whose verdict could not be
    /// evaluated exactly.
    pub at: Option<Verdict>,
    pub after: Option<Verdict>,
    pub flipped: Vec<CandidateFlip>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlipSchedule {
    pub flips: Vec<Flip>,
}

impl FlipSchedule {
    pub fn is_empty(&self) -> bool {
        self.flips.is_empty()
    }
}

fn ordering_of(orderings: &[(String, Ordering)], name: &str) -> Option<Ordering> {
    orderings.iter().find(|(n, _)| n == name).map(|(_, o)| *o)
}

/// Builds the schedule from an existing report.
pub fn schedule_from_report(report: &ChamberReport) -> FlipSchedule {
    let flips = report
        .walls
        .iter()
        .enumerate()
        .map(|(k, wall)| {
            let before = report.chamber_below(k).map(|c| &report.chambers[c]);
            let after = report.chamber_above(k).map(|c| &report.chambers[c]);
            let at = &report.at_walls[k];
            let flipped = wall
                .triggering
                .iter()
                .map(|tr| CandidateFlip {
                    candidate: tr.candidate.clone(),
                    before: before.and_then(|c| ordering_of(&c.orderings, &tr.candidate)),
                    at: at.orderings.as_ref().and_then(|o| ordering_of(o, &tr.candidate)),
                    after: after.and_then(|c| ordering_of(&c.orderings, &tr.candidate)),
                })
                .collect();
            Flip {
                wall: wall.clone(),
                before: before.map(|c| c.verdict.clone()),
                at: at.verdict.clone(),
                after: after.map(|c| c.verdict.clone()),
                flipped,
            }
        })
        .collect();
    FlipSchedule { flips }
}

/// Ordered verdict transitions across the walls of `seg`.
pub fn flip_schedule(e: &SheafClass, candidates: &[SheafClass], seg: &StabilitySegment) -> Result<FlipSchedule, SegmentError> {
    Ok(schedule_from_report(&chamber_decomposition(e, candidates, seg)?))
}

/// Result of cross-checking a report against direct evaluation on the grid
/// `t = k/n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridOracleReport {
    pub n: u64,
    pub checked: u64,
    pub on_walls: u64,
    pub disagreements: Vec<Rational>,
}

impl GridOracleReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// Evaluates `stability_verdict` at every `t = k/n` and compares with the
/// verdict `report` predicts there.
pub fn grid_oracle(
    e: &SheafClass,
    candidates: &[SheafClass],
    seg: &StabilitySegment,
    report: &ChamberReport,
    n: u64,
) -> Result<GridOracleReport, SegmentError> {
    let mut out = GridOracleReport { n, checked: 0, on_walls: 0, disagreements: Vec::new() };
    if n == 0 {
        return Ok(out);
    }
    for k in 0..=n {
        let t = Rational::new(k.into(), n.into());
        let direct = stability_verdict(e, candidates, &seg.at(&t))?;
        if matches!(report.locate(&t), Location::Wall(_) | Location::Exceptional(_)) {
            out.on_walls += 1;
        }
        out.checked += 1;
        if report.verdict_at(&t) != Some(&direct) {
            out.disagreements.push(t);
        }
    }
    Ok(out)
}

/// One end of a maximal interval of the locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusEnd {
    pub at: IsolatedRoot,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocusInterval {
    pub lower: LocusEnd,
    pub upper: LocusEnd,
}

/// Maximal intervals of `{t ∈ [0, 1] : p_F^{σ(t)} ≤ p_E^{σ(t)}}`, computed
/// exactly from the chamber structure of `e` against the single candidate
/// `f`.
pub fn nonexceeding_locus(e: &SheafClass, f: &SheafClass, seg: &StabilitySegment) -> Result<Vec<LocusInterval>, SegmentError> {
    let report = chamber_decomposition(e, std::slice::from_ref(f), seg)?;
    let member = |o: Option<Ordering>| -> Result<bool, SegmentError> {
        match o {
            Some(o) => Ok(o != Ordering::Greater),
            None => Err(SegmentError::Internal("comparison at an irrational point is unavailable".into())),
        }
    };
    let single = |orderings: &Option<Vec<(String, Ordering)>>| orderings.as_ref().map(|o| o[0].1);

    // alternating sequence: point, open, point, open, …, point
    enum Atom {
        Point(IsolatedRoot, bool),
        Open(bool),
    }
    let endpoint_root = |x: Rational| IsolatedRoot {
        poly: Polynomial::linear(-x.clone(), Rational::one(), Var::T),
        lo: x.clone(),
        hi: x.clone(),
        exact: Some(x),
        multiplicity_free: true,
    };
    let mut atoms = Vec::new();
    for (c, chamber) in report.chambers.iter().enumerate() {
        let inside = member(Some(chamber.orderings[0].1))?;
        match chamber.lower {
            None => atoms.push(Atom::Point(endpoint_root(Rational::zero()), inside)),
            Some(w) => atoms.push(Atom::Point(report.walls[w].location.clone(), member(single(&report.at_walls[w].orderings))?)),
        }
        atoms.push(Atom::Open(inside));
        for x in report.exceptional.iter().filter(|x| x.chamber == c) {
            atoms.push(Atom::Point(x.point.location.clone(), member(single(&x.point.orderings))?));
            atoms.push(Atom::Open(inside));
        }
        if chamber.upper.is_none() {
            atoms.push(Atom::Point(endpoint_root(Rational::one()), inside));
        }
    }
    if let Some(&Some(w)) = report.chambers.last().map(|c| &c.upper) {
        atoms.push(Atom::Point(report.walls[w].location.clone(), member(single(&report.at_walls[w].orderings))?));
    }

    let mut out = Vec::new();
    let mut start: Option<LocusEnd> = None;
    let mut last_point: Option<IsolatedRoot> = None;
    for atom in atoms {
        match atom {
            Atom::Point(loc, inside) => {
                if inside && start.is_none() {
                    start = Some(LocusEnd { at: loc.clone(), closed: true });
                }
                if !inside {
                    if let Some(lower) = start.take() {
                        out.push(LocusInterval { lower, upper: LocusEnd { at: loc.clone(), closed: false } });
                    }
                }
                last_point = Some(loc);
            }
            Atom::Open(inside) => {
                let prev = last_point.clone().expect("open atoms follow points");
                if inside && start.is_none() {
                    start = Some(LocusEnd { at: prev.clone(), closed: false });
                }
                if !inside {
                    if let Some(lower) = start.take() {
                        out.push(LocusInterval { lower, upper: LocusEnd { at: prev, closed: true } });
                    }
                }
            }
        }
    }
    if let Some(lower) = start {
        let at = last_point.expect("sequence ends with a point");
        out.push(LocusInterval { lower, upper: LocusEnd { at, closed: true } });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{int, rat};
    use crate::segment::validate_segment;

    fn m(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c, Var::M)
    }

    fn unit_segment() -> StabilitySegment {
        validate_segment(&[int(1), int(0)], &[int(0), int(1)], &[int(1), int(1)], 1).unwrap()
    }

    fn sheaves() -> (SheafClass, SheafClass, SheafClass) {
        let e = SheafClass::new("E", 1, int(2), vec![m(&[1, 2]), m(&[1, 2])]).unwrap();
        let f = SheafClass::new("F", 1, int(1), vec![m(&[1, 1]), m(&[-1, 1])]).unwrap();
        let g = SheafClass::new("G", 1, int(1), vec![m(&[2, 1]), m(&[-2, 1])]).unwrap();
        (e, f, g)
    }

    fn unstable(names: &[&str]) -> Verdict {
        Verdict::Unstable { witnesses: names.iter().map(|s| s.to_string()).collect() }
    }

    #[test]
    fn single_wall_at_one_quarter() {
        let (e, f, _) = sheaves();
        let walls = find_walls(&e, &[f.clone()], &unit_segment()).unwrap();
        assert_eq!(walls.len(), 1);
        assert_eq!(walls[0].location.exact, Some(rat(1, 4)));
        assert_eq!(walls[0].triggering, vec![Trigger { candidate: "F".into(), index: 0 }]);
        assert!(!walls[0].endpoint);

        let report = chamber_decomposition(&e, &[f], &unit_segment()).unwrap();
        assert_eq!(report.chambers.len(), 2);
        assert_eq!(report.chambers[0].verdict, unstable(&["F"]));
        assert_eq!(report.chambers[1].verdict, Verdict::Stable);
        assert_eq!(report.at_walls[0].orderings.as_ref().unwrap()[0].1, Ordering::Equal);
    }

    #[test]
    fn two_candidates_two_walls() {
        let (e, f, g) = sheaves();
        let report = chamber_decomposition(&e, &[f, g], &unit_segment()).unwrap();
        let locs: Vec<_> = report.walls.iter().map(|w| w.location.exact.clone().unwrap()).collect();
        assert_eq!(locs, vec![rat(1, 4), rat(3, 8)]);
        let verdicts: Vec<_> = report.chambers.iter().map(|c| c.verdict.clone()).collect();
        assert_eq!(verdicts, vec![unstable(&["F", "G"]), unstable(&["G"]), Verdict::Stable]);
        assert_eq!(report.chambers[1].sample, rat(1, 3));
        assert!(report.exceptional.is_empty());

        let schedule = schedule_from_report(&report);
        assert_eq!(schedule.flips.len(), 2);
        assert_eq!(schedule.flips[1].flipped[0].candidate, "G");
    }

    #[test]
    fn flip_schedule_transitions() {
        let (e, f, _) = sheaves();
        let schedule = flip_schedule(&e, &[f], &unit_segment()).unwrap();
        assert_eq!(schedule.flips.len(), 1);
        let flip = &schedule.flips[0];
        assert_eq!(flip.before, Some(unstable(&["F"])));
        assert_eq!(flip.at, Some(Verdict::StrictlySemistable { witnesses: vec!["F".into()] }));
        assert_eq!(flip.after, Some(Verdict::Stable));
        let cf = &flip.flipped[0];
        assert_eq!((cf.before, cf.at, cf.after), (Some(Ordering::Greater), Some(Ordering::Equal), Some(Ordering::Less)));
    }

    #[test]
    fn no_candidates_and_constant_segment() {
        let (e, f, _) = sheaves();
        let report = chamber_decomposition(&e, &[], &unit_segment()).unwrap();
        assert!(report.walls.is_empty());
        assert_eq!(report.chambers.len(), 1);
        assert_eq!(report.chambers[0].verdict, Verdict::Stable);

        let constant = validate_segment(&[rat(1, 2), rat(1, 2)], &[rat(1, 2), rat(1, 2)], &[int(1), int(1)], 1).unwrap();
        assert!(flip_schedule(&e, &[f], &constant).unwrap().is_empty());
    }

    #[test]
    fn endpoint_wall_is_flagged() {
        // F equal to E at t = 0 only: c_0 = -4t
        let e = SheafClass::new("E", 1, int(2), vec![m(&[2, 2]), m(&[2, 2])]).unwrap();
        let f = SheafClass::new("F", 1, int(1), vec![m(&[1, 1]), m(&[-1, 1])]).unwrap();
        let report = chamber_decomposition(&e, &[f], &unit_segment()).unwrap();
        assert_eq!(report.walls.len(), 1);
        assert!(report.walls[0].endpoint);
        assert_eq!(report.walls[0].location.exact, Some(int(0)));
        assert_eq!(report.chambers.len(), 1);
        assert_eq!(report.chambers[0].lower, Some(0));
        let schedule = schedule_from_report(&report);
        assert_eq!(schedule.flips[0].before, None);
        assert_eq!(report.locate(&int(0)), Location::Wall(0));
        assert_eq!(report.locate(&rat(1, 2)), Location::Chamber(0));
    }

    #[test]
    fn double_root_is_an_exceptional_point_not_a_wall() {
        // c_0 = (2t − 1)^2
        let e = SheafClass::new("E", 1, int(1), vec![m(&[-3, 1]), m(&[-1, 3])]).unwrap();
        let f = SheafClass::new("F", 1, int(1), vec![m(&[-2, 1]), m(&[0, 1])]).unwrap();
        let seg = unit_segment();
        let wp = wall_polynomials(&f, &e, &seg).unwrap();
        assert_eq!(wp.coeffs[0], Polynomial::from_ints(&[1, -4, 4], Var::T));
        let report = chamber_decomposition(&e, &[f.clone()], &seg).unwrap();
        assert!(report.walls.is_empty());
        assert_eq!(report.chambers.len(), 1);
        assert_eq!(report.chambers[0].verdict, unstable(&["F"]));
        assert_eq!(report.exceptional.len(), 1);
        assert_eq!(report.exceptional[0].point.location.exact, Some(rat(1, 2)));
        assert_eq!(
            report.verdict_at(&rat(1, 2)),
            Some(&Verdict::StrictlySemistable { witnesses: vec!["F".into()] })
        );
        assert!(grid_oracle(&e, &[f.clone()], &seg, &report, 100).unwrap().agrees());

        let locus = nonexceeding_locus(&e, &f, &seg).unwrap();
        assert_eq!(locus.len(), 1);
        assert_eq!(locus[0].lower, locus[0].upper);
        assert!(locus[0].lower.closed);
    }

    #[test]
    fn irrational_wall_is_evaluated_exactly() {
        // c_0 = t^2 − 5t + 3, root (5 − √13)/2 in (0, 1)
        let e = SheafClass::new("E", 1, int(1), vec![m(&[-3, 1]), m(&[-3, 2])]).unwrap();
        let f = SheafClass::new("F", 1, int(1), vec![m(&[-3, 2]), m(&[-2, 1])]).unwrap();
        let seg = unit_segment();
        let wp = wall_polynomials(&f, &e, &seg).unwrap();
        assert_eq!(wp.coeffs[0], Polynomial::from_ints(&[3, -5, 1], Var::T));
        let report = chamber_decomposition(&e, &[f.clone()], &seg).unwrap();
        assert_eq!(report.walls.len(), 1);
        assert!(report.walls[0].location.exact.is_none());
        assert_eq!(
            report.at_walls[0].verdict,
            Some(Verdict::StrictlySemistable { witnesses: vec!["F".into()] })
        );
        assert_eq!(report.chambers[0].verdict, unstable(&["F"]));
        assert_eq!(report.chambers[1].verdict, Verdict::Stable);
        assert!(grid_oracle(&e, &[f], &seg, &report, 1000).unwrap().agrees());
    }

    #[test]
    fn locus_of_running_example() {
        let (e, f, _) = sheaves();
        let locus = nonexceeding_locus(&e, &f, &unit_segment()).unwrap();
        assert_eq!(locus.len(), 1);
        assert_eq!(locus[0].lower.at.exact, Some(rat(1, 4)));
        assert!(locus[0].lower.closed);
        assert_eq!(locus[0].upper.at.exact, Some(int(1)));
        assert!(locus[0].upper.closed);
    }
}
