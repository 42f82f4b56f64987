use super::arc::ArcDiagram;
use crate::smooth;
use crate::{Error, Result};

/// Chart constants for the polar-cap layout. Longitude/latitude coordinates
/// `(phi, eta)`; the arc runs west to east along the equator, dipping into the
/// caps at the crossings.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub k: usize,
    /// crossing longitudes, arc order
    pub phi: Vec<f64>,
    /// signed peak latitude of each crossing (`omega_j * theta_peak`)
    pub eta_peak: Vec<f64>,
    #[allow(dead_code)] // read by the layout tests
    pub theta_peak: f64,
    pub phi_start: f64,
    pub phi_end: f64,
    pub bump_width: f64,
    /// ring spacing between nested connector levels
    pub delta: f64,
    pub chords: Vec<Chord>,
}

/// One connector of the return path, drawn as an offset of the arc profile.
#[derive(Debug, Clone)]
pub(crate) struct Chord {
    pub from: usize,
    pub to: usize,
    pub span: (usize, usize),
    #[allow(dead_code)] // read by the layout tests
    pub rank: usize,
    pub offset: f64,
}

/// Polar angle of the crossing points; comfortably inside the pi/12 cap.
pub const CAP_POLAR_ANGLE: f64 = 0.24;
/// Latitude head-room kept clear of the poles for the connector levels.
const POLE_MARGIN: f64 = 0.06;

impl Layout {
    /// Station coding on the cut boundary: `0` is the arc start, `1..=k` the
    /// north copies in arc order, `k+1` the arc end, `k+2..=2k+1` the south
    /// copies in reverse arc order.
    pub fn station_n(&self, j: usize) -> usize {
        j
    }

    pub fn station_s(&self, j: usize) -> usize {
        2 * self.k + 2 - j
    }

    pub fn station_crossing(&self, st: usize) -> Option<(usize, i8)> {
        if st >= 1 && st <= self.k {
            Some((st, 1))
        } else if st >= self.k + 2 && st <= 2 * self.k + 1 {
            Some((2 * self.k + 2 - st, -1))
        } else {
            None
        }
    }

    /// Arc profile: equatorial, with a flat plateau at each crossing peak.
    pub fn eta_arc(&self, phi: f64) -> f64 {
        let mut eta = 0.0;
        for (p, peak) in self.phi.iter().zip(self.eta_peak.iter()) {
            let x = (phi - p).abs() / self.bump_width;
            if x < 1.0 {
                eta += peak * plateau(x);
            }
        }
        eta
    }

    pub fn wrap_east(&self, offset: f64) -> f64 {
        self.phi_end + offset
    }

    pub fn wrap_west(&self, offset: f64) -> f64 {
        self.phi_start - offset
    }
}

/// 1 on `[0, 0.35]`, 0 past 1, smooth and flat at both ends.
fn plateau(x: f64) -> f64 {
    smooth::step((1.0 - x) / 0.65)
}

/// Compute the combinatorial and metric layout for an arc diagram.
pub(crate) fn plan_layout(arc: &ArcDiagram) -> Result<Layout> {
    let k = arc.arc_end;
    let theta_peak = std::f64::consts::FRAC_PI_2 - CAP_POLAR_ANGLE;
    let phi: Vec<f64> = if k <= 1 {
        vec![0.0; k]
    } else {
        (0..k).map(|j| -1.6 + 3.2 * j as f64 / (k - 1) as f64).collect()
    };
    let eta_peak: Vec<f64> = (0..k).map(|j| arc.omega[j] as f64 * theta_peak).collect();
    let spacing = if k <= 1 { 3.2 } else { 3.2 / (k - 1) as f64 };
    let bump_width = (0.42 * spacing).min(0.55);
    let delta = (std::f64::consts::FRAC_PI_2 - POLE_MARGIN - theta_peak) / (k + 2) as f64;

    let mut layout = Layout {
        k,
        phi,
        eta_peak,
        theta_peak,
        phi_start: -2.3,
        phi_end: 2.3,
        bump_width,
        delta,
        chords: Vec::new(),
    };

    // return-path chords between boundary stations; the crossing direction of
    // the return strand is forced by handedness and over/under:
    // d_j = sign_j * omega_j, +1 meaning the return strand crosses northward
    // (arrives on the south copy, departs on the north copy)
    let mut chords_raw: Vec<(usize, usize)> = Vec::new();
    let mut prev = k + 1;
    for &j in &arc.tau {
        let d = arc.sign(j) * arc.omega[j - 1];
        let (arrive, depart) = if d > 0 {
            (layout.station_s(j), layout.station_n(j))
        } else {
            (layout.station_n(j), layout.station_s(j))
        };
        chords_raw.push((prev, arrive));
        prev = depart;
    }
    chords_raw.push((prev, 0));

    // spans avoid the basepoint between the last south copy and the arc
    // start, so they are plain intervals; realizable diagrams give a
    // laminar (non-interleaved) family
    let spans: Vec<(usize, usize)> =
        chords_raw.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    for (i, a) in spans.iter().enumerate() {
        for b in spans.iter().skip(i + 1) {
            let interleaved = (a.0 < b.0 && b.0 < a.1 && a.1 < b.1)
                || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1);
            if interleaved {
                return Err(Error::LayoutFailed(format!(
                    "return connectors interleave: spans {a:?} and {b:?}"
                )));
            }
        }
    }

    // nesting rank: strictly containing chords ride farther from the arc
    let mut ranks = vec![0usize; spans.len()];
    let mut order: Vec<usize> = (0..spans.len()).collect();
    order.sort_by_key(|&i| spans[i].1 - spans[i].0);
    for &i in &order {
        let mut r = 0;
        for &m in &order {
            if m != i && spans[m].0 > spans[i].0 && spans[m].1 < spans[i].1 {
                r = r.max(ranks[m] + 1);
            }
        }
        ranks[i] = r;
    }

    layout.chords = chords_raw
        .iter()
        .zip(spans.iter().zip(ranks.iter()))
        .map(|(&(from, to), (&span, &rank))| Chord {
            from,
            to,
            span,
            rank,
            offset: delta * (1.0 + rank as f64),
        })
        .collect();
    Ok(layout)
}

/// Chart waypoints of one chord, from its departure anchor to its arrival
/// anchor. Rides follow the offset graph of the arc profile; side switches
/// happen only around the east end, and only the final chord rounds the west
/// end into the arc start.
pub(crate) fn chord_waypoints(layout: &Layout, chord: &Chord) -> Vec<(f64, f64)> {
    let b = chord.offset;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let ascending = chord.to > chord.from;

    // side of travel right after leaving `from`: the stretch between two
    // consecutive stations is on the north side iff both lie at or before
    // the arc-end station
    let side_after = |st: usize| -> f64 {
        let next = if ascending { st + 1 } else { st - 1 };
        if st.max(next) <= layout.k + 1 {
            1.0
        } else {
            -1.0
        }
    };

    // departure attach
    let mut phi_cursor;
    let mut side;
    match layout.station_crossing(chord.from) {
        Some((j, st_side)) => {
            let phi_j = layout.phi[j - 1];
            let peak = layout.eta_peak[j - 1];
            side = st_side as f64;
            pts.push((phi_j, peak));
            pts.push((phi_j, layout.eta_arc(phi_j) + side * b));
            phi_cursor = phi_j;
        }
        None => {
            // the arc end: run tangentially east, then turn onto the level
            assert_eq!(chord.from, layout.k + 1, "chords depart crossings or the arc end");
            let wrap = layout.wrap_east(b);
            side = side_after(layout.k + 1);
            pts.push((layout.phi_end, 0.0));
            pts.push((wrap, 0.0));
            pts.push((wrap, side * b));
            phi_cursor = wrap;
        }
    }

    // east cap switch when the span strictly contains the arc end
    let interior_end = chord.span.0 < layout.k + 1 && layout.k + 1 < chord.span.1;
    if interior_end {
        let wrap = layout.wrap_east(b);
        ride_into(&mut pts, layout, phi_cursor, wrap, side, b);
        pts.push((wrap, -side * b));
        side = -side;
        phi_cursor = wrap;
    }

    // arrival attach
    match layout.station_crossing(chord.to) {
        Some((j, st_side)) => {
            let phi_j = layout.phi[j - 1];
            let peak = layout.eta_peak[j - 1];
            debug_assert_eq!(st_side as f64, side, "arrival side must match the walk");
            ride_into(&mut pts, layout, phi_cursor, phi_j, side, b);
            pts.push((phi_j, peak));
        }
        None => {
            // the arc start: round the west end and run tangentially east
            assert_eq!(chord.to, 0, "chords arrive at crossings or the arc start");
            let wrap = layout.wrap_west(b);
            ride_into(&mut pts, layout, phi_cursor, wrap, side, b);
            pts.push((wrap, 0.0));
            pts.push((layout.phi_start, 0.0));
        }
    }
    pts
}

/// Append offset-graph samples from `phi0` to `phi1` (endpoint included).
fn ride_into(
    pts: &mut Vec<(f64, f64)>,
    layout: &Layout,
    phi0: f64,
    phi1: f64,
    side: f64,
    offset: f64,
) {
    let step = 0.01;
    let n = ((phi1 - phi0).abs() / step).ceil() as usize;
    for i in 1..=n.max(1) {
        let phi = phi0 + (phi1 - phi0) * i as f64 / n.max(1) as f64;
        pts.push((phi, layout.eta_arc(phi) + side * offset));
    }
}

/// The arc itself: the profile graph from start to end.
pub(crate) fn arc_waypoints(layout: &Layout) -> Vec<(f64, f64)> {
    let mut pts = vec![(layout.phi_start, 0.0)];
    ride_into(
        &mut pts,
        layout,
        layout.phi_start,
        layout.phi_end,
        0.0,
        0.0,
    );
    pts
}
