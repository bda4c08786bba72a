//! One-dimensional emptiness sweep over a closed or half-open parameter
//! range covered by open "vertex is interior" intervals.

/// Result of checking a single parameter exactly.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum PointCheck {
    Empty,
    Occupied,
    /// Two or more relevant vertices share the boundary with `p` and `q`.
    Ambiguous(String),
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum SweepOutcome {
    Witness(f64),
    Absent,
    Ambiguous(String),
}

pub(crate) struct SweepInput {
    pub t0: f64,
    pub t1: f64,
    pub closed_lo: bool,
    pub closed_hi: bool,
    /// Open intervals, possibly reaching past the domain.
    pub intervals: Vec<(f64, f64)>,
}

/// Relative width below which parameter events are considered simultaneous.
pub(crate) const TIE_TOL: f64 = 1e-9;

fn count_le(sorted: &[f64], x: f64) -> usize {
    sorted.partition_point(|&v| v <= x)
}

fn count_lt(sorted: &[f64], x: f64) -> usize {
    sorted.partition_point(|&v| v < x)
}

/// Scans gaps between events first; only if none is empty are event clusters
/// and closed domain ends examined with `check`.
pub(crate) fn sweep<F: FnMut(f64) -> PointCheck>(input: &SweepInput, mut check: F) -> SweepOutcome {
    let (t0, t1) = (input.t0, input.t1);
    let tie = TIE_TOL * (t1 - t0);
    let mut los: Vec<f64> = input.intervals.iter().map(|i| i.0).collect();
    let mut his: Vec<f64> = input.intervals.iter().map(|i| i.1).collect();
    los.sort_by(|a, b| a.partial_cmp(b).unwrap());
    his.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let covered = |m: f64| count_lt(&los, m) - count_le(&his, m);

    let mut bps: Vec<f64> = vec![t0, t1];
    for &(lo, hi) in &input.intervals {
        for t in [lo, hi] {
            if t > t0 && t < t1 {
                bps.push(t);
            }
        }
    }
    bps.sort_by(|a, b| a.partial_cmp(b).unwrap());

    for w in bps.windows(2) {
        if w[1] - w[0] > tie {
            let m = 0.5 * (w[0] + w[1]);
            if covered(m) == 0 {
                return SweepOutcome::Witness(m);
            }
        }
    }

    let mut clusters: Vec<(f64, f64, usize)> = Vec::new();
    for &b in &bps {
        match clusters.last_mut() {
            Some(c) if b - c.1 <= tie => {
                c.1 = b;
                c.2 += 1;
            }
            _ => clusters.push((b, b, 1)),
        }
    }
    let mut ambiguous: Option<String> = None;
    for (cs, ce, size) in clusters {
        let at_lo = cs == t0;
        let at_hi = ce == t1;
        if (at_lo && !input.closed_lo) || (at_hi && !input.closed_hi) {
            continue;
        }
        if size < 2 && !at_lo && !at_hi {
            continue;
        }
        let straddling = input
            .intervals
            .iter()
            .filter(|&&(lo, hi)| lo < cs && hi > ce)
            .count();
        if straddling > 0 {
            continue;
        }
        let t = if at_lo {
            t0
        } else if at_hi {
            t1
        } else {
            0.5 * (cs + ce)
        };
        match check(t) {
            PointCheck::Empty => return SweepOutcome::Witness(t),
            PointCheck::Occupied => {}
            PointCheck::Ambiguous(d) => {
                ambiguous.get_or_insert(d);
            }
        }
    }
    match ambiguous {
        Some(d) => SweepOutcome::Ambiguous(d),
        None => SweepOutcome::Absent,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(intervals: Vec<(f64, f64)>, closed: bool) -> SweepInput {
        SweepInput {
            t0: 0.0,
            t1: 1.0,
            closed_lo: closed,
            closed_hi: closed,
            intervals,
        }
    }

    #[test]
    fn empty_family_is_witnessed_at_midpoint() {
        assert_eq!(
            sweep(&input(vec![], false), |_| PointCheck::Occupied),
            SweepOutcome::Witness(0.5)
        );
    }

    #[test]
    fn first_gap_wins() {
        let out = sweep(&input(vec![(-1.0, 0.2), (0.6, 2.0)], false), |_| {
            PointCheck::Occupied
        });
        assert_eq!(out, SweepOutcome::Witness(0.4));
    }

    #[test]
    fn full_cover_is_absent() {
        let out = sweep(&input(vec![(-1.0, 0.6), (0.4, 2.0)], true), |_| {
            PointCheck::Empty
        });
        assert_eq!(out, SweepOutcome::Absent);
    }

    #[test]
    fn touching_intervals_defer_to_point_check() {
        let iv = vec![(-1.0, 0.5), (0.5, 2.0)];
        let out = sweep(&input(iv.clone(), false), |_| {
            PointCheck::Ambiguous("tie".into())
        });
        assert_eq!(out, SweepOutcome::Ambiguous("tie".into()));
        let out = sweep(&input(iv, false), |t| {
            if t == 0.5 {
                PointCheck::Empty
            } else {
                PointCheck::Occupied
            }
        });
        assert_eq!(out, SweepOutcome::Witness(0.5));
    }

    #[test]
    fn closed_end_is_checked_exactly() {
        // the only empty homothet is the extreme one
        let iv = vec![(0.0, 2.0)];
        let out = sweep(&input(iv.clone(), true), |t| {
            if t == 0.0 {
                PointCheck::Empty
            } else {
                PointCheck::Occupied
            }
        });
        assert_eq!(out, SweepOutcome::Witness(0.0));
        let out = sweep(&input(iv, false), |_| PointCheck::Empty);
        assert_eq!(out, SweepOutcome::Absent);
    }
}
