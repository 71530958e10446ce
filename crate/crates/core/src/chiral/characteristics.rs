use super::cascade::CascadeCase;
use crate::diagram::{CharacteristicDiagram, Segment, TransitionRow};
use crate::error::{require_positive, Error, Result};
use crate::wave_terms::Direction;

/// Arrival points closer than this are treated as one.
const CLUSTER_TOLERANCE: f64 = 1e-9;

/// A point receiving every family (two speeds, two directions).
const FULL_FAMILY_COUNT: usize = 4;

#[derive(Clone, Copy, Debug)]
struct Ray {
    x: f64,
    direction: Direction,
    speed: f64,
}

/// Characteristic diagram of the cascade on `[0, n T]`.
///
/// Each ray reaching a layer at `t = kT` branches into all four families
/// `(+-c1, +-c2)`. Coincident rays are merged. At each drawn interface the
/// transition layer on the right runs from the edge inward to the first
/// arrival point met by all four families (or to `x = 0` if there is none).
/// Once it has formed its width settles at `2 c1 T`, that is `2 c1/c2`
/// spacings `c2 T` of the slow lattice.
pub fn chiral_characteristics(
    c1: f64,
    c2: f64,
    period: f64,
    n: usize,
    case: CascadeCase,
) -> Result<CharacteristicDiagram> {
    require_positive("c1", c1)?;
    require_positive("c2", c2)?;
    require_positive("period", period)?;
    if c2 >= c1 {
        return Err(Error::invalid("c2", "must be smaller than c1"));
    }
    if n == 0 {
        return Err(Error::invalid("n", "at least one interval required"));
    }

    let mut speeds = Vec::new();
    if case.has_transverse() {
        speeds.push(c2);
    }
    if case.has_longitudinal() {
        speeds.push(c1);
    }
    let mut rays = merge(
        speeds
            .iter()
            .flat_map(|&speed| {
                [Direction::Forward, Direction::Backward].map(|direction| Ray { x: 0.0, direction, speed })
            })
            .collect(),
    );

    let mut diagram = CharacteristicDiagram::default();
    diagram.edge_right.push([0.0, 0.0]);
    diagram.edge_left.push([0.0, 0.0]);
    for k in 0..n {
        let (t0, t1) = (k as f64 * period, (k + 1) as f64 * period);
        let mut arrivals = Vec::with_capacity(rays.len());
        for ray in &rays {
            let x1 = ray.x + ray.direction.sign() * ray.speed * period;
            diagram.segments.push(Segment {
                x0: ray.x,
                t0,
                x1,
                t1,
                speed: ray.speed,
                direction: ray.direction,
                amplitude: 0.0,
                carrying: true,
            });
            arrivals.push((x1, *ray));
        }
        let right = arrivals.iter().map(|a| a.0).fold(f64::NEG_INFINITY, f64::max);
        let left = arrivals.iter().map(|a| a.0).fold(f64::INFINITY, f64::min);
        diagram.edge_right.push([right, t1]);
        diagram.edge_left.push([left, t1]);
        if k + 1 == n {
            break;
        }

        diagram.interfaces.push(t1);
        if let Some(row) = transition_row(&arrivals, t1) {
            diagram.transition_layer.push(row);
        }
        let mut next = Vec::with_capacity(4 * arrivals.len());
        for &(x, _) in &arrivals {
            for speed in [c1, c2] {
                for direction in [Direction::Forward, Direction::Backward] {
                    next.push(Ray { x, direction, speed });
                }
            }
        }
        rays = merge(next);
    }
    Ok(diagram)
}

/// Transition strip on the right half at one interface.
fn transition_row(arrivals: &[(f64, Ray)], t: f64) -> Option<TransitionRow> {
    let mut sorted: Vec<_> = arrivals.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    // (x, number of distinct families) per clustered point, right to left
    let mut points: Vec<(f64, Vec<(Direction, u64)>)> = Vec::new();
    for (x, ray) in sorted {
        let family = (ray.direction, ray.speed.to_bits());
        match points.last_mut() {
            Some((px, fams)) if (*px - x).abs() <= CLUSTER_TOLERANCE => {
                if !fams.contains(&family) {
                    fams.push(family);
                }
            }
            _ => points.push((x, vec![family])),
        }
    }
    let x_outer = points.first()?.0;
    let x_inner = points
        .iter()
        .find(|(_, fams)| fams.len() >= FULL_FAMILY_COUNT)
        .map_or(0.0, |p| p.0.max(0.0));
    Some(TransitionRow { t, x_inner, x_outer })
}

fn merge(mut rays: Vec<Ray>) -> Vec<Ray> {
    rays.sort_by(|a, b| {
        a.direction
            .cmp(&b.direction)
            .then(a.speed.total_cmp(&b.speed))
            .then(a.x.total_cmp(&b.x))
    });
    rays.dedup_by(|b, a| {
        a.direction == b.direction && a.speed == b.speed && (a.x - b.x).abs() <= CLUSTER_TOLERANCE
    });
    rays
}

/// Smallest eigenvalue of the non-gyroscopic rod on `(0, 1)` with fixed
/// ends: the slower of the two `sin(pi x)` modes.
pub fn first_eigenvalue_nonchiral(c1: f64, c2: f64) -> Result<f64> {
    require_positive("c1", c1)?;
    require_positive("c2", c2)?;
    Ok(std::f64::consts::PI * c1.min(c2))
}
