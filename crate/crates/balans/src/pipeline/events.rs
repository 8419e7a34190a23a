//! Systemic-event detection: maximal spans where the sliding mean of the
//! cross-asset daily return stays below a threshold τ.

use chrono::NaiveDate;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::panel::ReturnPanel;

/// One detected event: the union of all flagged sliding windows in a run.
#[derive(Clone, Debug, Serialize)]
pub struct Event {
    pub start_date: NaiveDate,
    pub end_date: NaiveDate,
    /// Most negative sliding mean inside the event.
    pub min_mean_return: f64,
    pub threshold_used: f64,
}

/// Events for one threshold, with the detection parameters echoed.
#[derive(Clone, Debug, Serialize)]
pub struct EventList {
    pub tau: f64,
    pub width: usize,
    pub strict_per_day: bool,
    pub events: Vec<Event>,
}

/// Detects events: the per-day cross-asset mean return is smoothed with a
/// `width`-day sliding mean (step 1); maximal runs of windows whose sliding
/// mean is below `tau` are merged, and each event spans the union of its
/// flagged windows' days.
///
/// With `strict_per_day`, a window is flagged only when *every* day inside
/// it is below `tau` — the literal "for ΔT consecutive days" reading.
pub fn detect_events(
    r: &ReturnPanel,
    tau: f64,
    width: usize,
    strict_per_day: bool,
) -> Result<EventList> {
    if !tau.is_finite() {
        return Err(Error::Invalid(format!("threshold {tau} must be finite")));
    }
    if width == 0 || width > r.n_obs() {
        return Err(Error::Invalid(format!(
            "event window {width} outside 1..={} observations",
            r.n_obs()
        )));
    }
    let daily = r.daily_mean_returns();

    // sliding statistic per window start j, and its flag
    let n_windows = daily.len() - width + 1;
    let mut flagged = Vec::with_capacity(n_windows);
    let mut stat = Vec::with_capacity(n_windows);
    for j in 0..n_windows {
        let days = &daily[j..j + width];
        let mean = days.iter().sum::<f64>() / width as f64;
        stat.push(mean);
        let hit = if strict_per_day { days.iter().all(|v| *v < tau) } else { mean < tau };
        flagged.push(hit);
    }

    let mut events = Vec::new();
    let mut j = 0;
    while j < n_windows {
        if !flagged[j] {
            j += 1;
            continue;
        }
        let run_start = j;
        while j < n_windows && flagged[j] {
            j += 1;
        }
        let run_end = j - 1; // inclusive last flagged window start
        let min_mean = stat[run_start..=run_end]
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        events.push(Event {
            start_date: r.dates()[run_start],
            end_date: r.dates()[run_end + width - 1],
            min_mean_return: min_mean,
            threshold_used: tau,
        });
    }

    Ok(EventList { tau, width, strict_per_day, events })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chrono::Days;

    /// Panel of 2 assets whose cross-asset daily mean equals `means`.
    fn panel_with_means(means: &[f64]) -> ReturnPanel {
        let start = NaiveDate::from_ymd_opt(2020, 1, 1).unwrap();
        let dates: Vec<NaiveDate> = (0..means.len())
            .map(|i| start.checked_add_days(Days::new(i as u64)).unwrap())
            .collect();
        // spread each day's mean as m ± 0.001 across the two assets
        let a: Vec<f64> = means.iter().map(|m| m + 0.001).collect();
        let b: Vec<f64> = means.iter().map(|m| m - 0.001).collect();
        ReturnPanel::new(vec!["A".into(), "B".into()], dates, vec![a, b]).unwrap()
    }

    #[test]
    fn planted_crash_is_one_event() {
        // 30 quiet days, 25 crash days at −0.02, 30 quiet days
        let mut means = vec![0.001; 30];
        means.extend(vec![-0.02; 25]);
        means.extend(vec![0.001; 30]);
        let r = panel_with_means(&means);
        let list = detect_events(&r, -0.01, 20, false).unwrap();
        assert_eq!(list.events.len(), 1);
        let e = &list.events[0];
        // the crash occupies days 30..=54; flagged windows must cover it
        assert!(e.start_date <= r.dates()[30]);
        assert!(e.end_date >= r.dates()[54]);
        assert!((e.min_mean_return - (-0.02)).abs() < 1e-12);
        assert!(e.min_mean_return < list.tau);
    }

    #[test]
    fn quiet_panel_has_no_events() {
        let r = panel_with_means(&vec![0.0; 40]);
        assert!(detect_events(&r, -0.01, 20, false).unwrap().events.is_empty());
        assert!(detect_events(&r, -0.01, 20, true).unwrap().events.is_empty());
    }

    #[test]
    fn threshold_discrimination() {
        let mut means = vec![0.002; 25];
        means.extend(vec![-0.007; 30]);
        means.extend(vec![0.002; 25]);
        let r = panel_with_means(&means);
        assert_eq!(detect_events(&r, -0.005, 20, false).unwrap().events.len(), 1);
        assert!(detect_events(&r, -0.01, 20, false).unwrap().events.is_empty());
    }

    #[test]
    fn strict_flag_requires_every_day_below() {
        // one strongly negative day inside a mild stretch: the sliding mean
        // dips below τ but not every day does
        let mut means = vec![0.0; 30];
        means[15] = -0.5;
        let r = panel_with_means(&means);
        assert_eq!(detect_events(&r, -0.01, 10, false).unwrap().events.len(), 1);
        assert!(detect_events(&r, -0.01, 10, true).unwrap().events.is_empty());
    }

    #[test]
    fn scale_covariance() {
        // scaling every return and τ by c > 0 flags the same windows,
        // because the sliding means scale linearly
        let mut means = vec![0.004; 25];
        means.extend(vec![-0.012; 24]);
        means.extend(vec![0.004; 25]);
        let r1 = panel_with_means(&means);
        let c = 3.5;
        let dates = r1.dates().to_vec();
        let scaled: Vec<Vec<f64>> = r1
            .returns()
            .iter()
            .map(|row| row.iter().map(|v| c * v).collect())
            .collect();
        let r2 = ReturnPanel::new(vec!["A".into(), "B".into()], dates, scaled).unwrap();
        let e1 = detect_events(&r1, -0.01, 20, false).unwrap();
        let e2 = detect_events(&r2, c * -0.01, 20, false).unwrap();
        assert_eq!(e1.events.len(), 1);
        assert_eq!(e1.events.len(), e2.events.len());
        for (x, y) in e1.events.iter().zip(&e2.events) {
            assert_eq!(x.start_date, y.start_date);
            assert_eq!(x.end_date, y.end_date);
        }
    }

    #[test]
    fn adjacent_flagged_windows_merge() {
        // two dips separated by a gap shorter than the window width still
        // produce one event when every intervening window stays flagged
        let mut means = vec![0.0; 10];
        means.extend(vec![-0.03; 8]);
        means.extend(vec![-0.012; 4]);
        means.extend(vec![-0.03; 8]);
        means.extend(vec![0.0; 10]);
        let r = panel_with_means(&means);
        let list = detect_events(&r, -0.01, 5, false).unwrap();
        assert_eq!(list.events.len(), 1);
    }

    #[test]
    fn validates_inputs() {
        let r = panel_with_means(&[0.0; 10]);
        assert!(detect_events(&r, f64::NAN, 5, false).is_err());
        assert!(detect_events(&r, -0.01, 0, false).is_err());
        assert!(detect_events(&r, -0.01, 11, false).is_err());
    }
}
